#include "limitcopy/diffalg/typeenum.hpp"

#include <algorithm>

namespace limitcopy {

namespace {

bool mono_divides(const Mono& a, const Mono& b) {
  // does a divide b
  if (a.size() > b.size()) return false;
  for (Nat i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono mono_quot(const Mono& b, const Mono& a) {
  Mono m = b;
  for (Nat i = 0; i < a.size(); ++i) m[i] -= a[i];
  while (!m.empty() && m.back() == 0) m.pop_back();
  return m;
}

// Exact division by the leading-term algorithm (lex monomial order).  If
// p = r*s the reduction never gets stuck, so failure means r does not
// divide p.
std::optional<DiffPoly> poly_divide(FieldPresentation& k, const DiffPoly& p,
                                    const DiffPoly& r) {
  if (r.is_zero()) return std::nullopt;
  auto lead_r = std::prev(r.terms.end());
  DiffPoly rem = p, quo;
  while (!rem.is_zero()) {
    auto lead = std::prev(rem.terms.end());
    if (!mono_divides(lead_r->first, lead->first)) return std::nullopt;
    auto c = k.div(lead->second, lead_r->second);
    if (!c) return std::nullopt;
    DiffPoly t = poly_term(*c, mono_quot(lead->first, lead_r->first));
    quo = poly_add(k, quo, t);
    rem = poly_sub(k, rem, poly_mul(k, t, r));
  }
  return quo;
}

// Monic candidate divisors in canonical order: sizes t = 1, 2, ...; within a
// size, term count ascending, monomial subsets in lex order, non-leading
// coefficients counted through the field's canonical coefficient stream.
class CandidatePool {
 public:
  CandidatePool(FieldPresentation& k, const DiffPoly& p, Nat cap)
      : k_(k), cap_(cap) {
    Nat ord = order_of(p).value_or(0);
    std::vector<Nat> degs(ord + 1);
    for (Nat i = 0; i <= ord; ++i) degs[i] = poly_degree_in(p, i);
    Mono cur;
    collect_monos(degs, 0, cur);
    std::sort(monos_.begin(), monos_.end());
  }

  std::optional<DiffPoly> take() {
    while (next_ >= pool_.size()) {
      if (pool_.size() > cap_) return std::nullopt;
      ++t_;
      if (t_ > cap_ + 2) return std::nullopt;
      emit_size(t_);
    }
    return pool_[next_++];
  }

 private:
  void collect_monos(const std::vector<Nat>& degs, Nat i, Mono& cur) {
    if (i == degs.size()) {
      Mono m = cur;
      while (!m.empty() && m.back() == 0) m.pop_back();
      monos_.push_back(std::move(m));
      return;
    }
    for (Nat e = 0; e <= degs[i]; ++e) {
      cur.push_back(e);
      collect_monos(degs, i + 1, cur);
      cur.pop_back();
    }
  }

  void emit_size(Nat t) {
    std::vector<Nat> coefs;
    for (Nat i = 0; i < t; ++i) {
      auto c = k_.coef_at(i);
      if (!c) break;
      coefs.push_back(*c);
    }
    Nat max_terms = std::min<Nat>(t, monos_.size());
    for (Nat nterms = 1; nterms <= max_terms; ++nterms) {
      std::vector<Nat> sel(nterms);
      for (Nat i = 0; i < nterms; ++i) sel[i] = i;
      while (true) {
        emit_subset(t, sel, coefs);
        // next combination
        Nat i = nterms;
        while (i > 0 && sel[i - 1] == monos_.size() - nterms + (i - 1)) --i;
        if (i == 0) break;
        ++sel[i - 1];
        for (Nat j = i; j < nterms; ++j) sel[j] = sel[j - 1] + 1;
      }
    }
  }

  void emit_subset(Nat t, const std::vector<Nat>& sel, const std::vector<Nat>& coefs) {
    const Mono& lead = monos_[sel.back()];
    if (lead.empty()) return;  // constants are not divisor candidates
    Nat nfree = sel.size() - 1;
    std::vector<Nat> idx(nfree, 0);
    while (true) {
      Nat max_idx = 0;
      for (Nat v : idx) max_idx = std::max(max_idx, v + 1);
      if (std::max<Nat>(sel.size(), std::max<Nat>(max_idx, 1)) == t &&
          max_idx <= coefs.size()) {
        DiffPoly r = poly_term(k_.one(), lead);
        for (Nat i = 0; i < nfree; ++i) {
          DiffPoly term = poly_term(coefs[idx[i]], monos_[sel[i]]);
          r = poly_add(k_, r, term);
        }
        if (pool_.size() <= cap_) pool_.push_back(std::move(r));
      }
      Nat i = 0;
      while (i < nfree && idx[i] == t - 1) idx[i++] = 0;
      if (i == nfree) break;
      ++idx[i];
    }
  }

  FieldPresentation& k_;
  Nat cap_;
  Nat t_ = 0;
  std::vector<Mono> monos_;
  std::vector<DiffPoly> pool_;
  Nat next_ = 0;
};

bool scalar_multiple(FieldPresentation& k, const DiffPoly& a, const DiffPoly& b) {
  if (a.terms.size() != b.terms.size() || a.is_zero()) return false;
  std::optional<Nat> ratio;
  auto ib = b.terms.begin();
  for (const auto& [m, c] : a.terms) {
    if (m != ib->first) return false;
    auto r = k.div(c, ib->second);
    if (!r) return false;
    if (!ratio) ratio = *r;
    else if (*ratio != *r) return false;
    ++ib;
  }
  return true;
}

}  // namespace

std::vector<DiffPoly> lower_order_stream(FieldPresentation& k, const DiffPoly& p,
                                         const Index& size_bound) {
  std::vector<DiffPoly> out;
  auto op = order_of(p);
  if (op && *op == 0) return out;
  for (Index z = 0; z <= size_bound; ++z) {
    auto q = k.poly_from_code(z);
    if (!q || q->is_zero()) continue;
    Nat oq = *order_of(*q);
    if (!op || oq < *op) out.push_back(std::move(*q));
  }
  return out;
}

std::optional<Factorization> reducibility_witness(FieldPresentation& k,
                                                  const DiffPoly& p, Nat budget) {
  if (p.is_zero() || poly_is_constant(p)) return std::nullopt;
  CandidatePool pool(k, p, budget);
  for (Nat tried = 0; tried < budget; ++tried) {
    auto r = pool.take();
    if (!r) return std::nullopt;
    auto s = poly_divide(k, p, *r);
    if (!s || s->is_zero() || poly_is_constant(*s)) continue;
    if (poly_mul(k, *r, *s) != p)
      throw PredicateViolation("reducibility_witness: division lied");
    return Factorization{std::move(*r), std::move(*s)};
  }
  return std::nullopt;
}

ConsistencyDecider::Verdict AlgebraicDecider::judge(FieldPresentation& k,
                                                    const DiffPoly& p,
                                                    const DiffPoly& q, Nat budget) {
  if (q.is_zero()) return Verdict::Zero;
  if (p.is_zero()) return Verdict::NonZero;  // all finite orders stay nonzero
  if (poly_is_constant(p)) return Verdict::Unknown;  // p = 0 was never consistent
  Nat op = *order_of(p);
  if (op == 0 && k.all_constants) {
    // derivatives of an algebraic constant vanish; reduce to x alone
    DiffPoly q0;
    for (const auto& [m, c] : q.terms) {
      bool killed = false;
      for (Nat i = 1; i < m.size(); ++i)
        if (m[i] > 0) killed = true;
      if (!killed) q0.terms.emplace(m, c);
    }
    if (q0.is_zero()) return Verdict::Zero;
    if (poly_is_constant(q0)) return Verdict::NonZero;
    Nat dp = poly_degree_in(p, 0);
    if (poly_degree_in(q0, 0) > budget) return Verdict::Unknown;
    Nat lc_p = p.terms.rbegin()->second;
    DiffPoly rem = q0;
    while (!rem.is_zero() && poly_degree_in(rem, 0) >= dp) {
      Nat dr = poly_degree_in(rem, 0);
      Nat c = *k.div(rem.terms.rbegin()->second, lc_p);
      Mono shift = dr == dp ? Mono{} : Mono{dr - dp};
      DiffPoly t = poly_term(c, shift);
      rem = poly_sub(k, rem, poly_mul(k, t, p));
    }
    return rem.is_zero() ? Verdict::Zero : Verdict::NonZero;
  }
  auto oq = order_of(q);
  if (oq && *oq < op) return Verdict::NonZero;
  return Verdict::Unknown;
}

EnumeratedType::EnumeratedType(std::shared_ptr<FieldPresentation> k, DiffPoly p,
                               std::shared_ptr<ConsistencyDecider> decider,
                               Nat budget, bool greedy_only)
    : k_(std::move(k)), p_(std::move(p)), decider_(std::move(decider)), budget_(budget) {
  if (greedy_only || (!p_.is_zero() && poly_is_constant(p_))) {
    greedy_ = true;  // p = 0 is not consistent; complete from scratch
    return;
  }
  commit(p_, Ans::In);
}

void EnumeratedType::enter_greedy() {
  // the product index is only paid for once greedy answering begins
  for (Nat j = 0; j < log_.size(); ++j)
    for (Nat i = 0; i <= j; ++i)
      prods_[poly_key(poly_mul(*k_, log_[i].first, log_[j].first))].push_back({i, j});
  greedy_ = true;
}

Ans EnumeratedType::decide(const DiffPoly& q) {
  auto hit = memo_.find(poly_key(q));
  if (hit != memo_.end()) return log_[hit->second].second;
  std::optional<Ans> a;
  if (!greedy_) {
    switch (decider_->judge(*k_, p_, q, budget_)) {
      case ConsistencyDecider::Verdict::Zero:
        a = Ans::In;
        break;
      case ConsistencyDecider::Verdict::NonZero:
        a = Ans::Out;
        break;
      case ConsistencyDecider::Verdict::Unknown:
        if (!reducibility_checked_) {
          reducibility_checked_ = true;
          witness_ = reducibility_witness(*k_, p_, budget_);
          reducible_ = witness_.has_value();
        }
        if (!reducible_) throw TypeStalled(poly_str(*k_, q));
        enter_greedy();
        break;
    }
  }
  if (!a) a = greedy_answer(q);
  commit(q, *a);
  return *a;
}

Ans EnumeratedType::greedy_answer(const DiffPoly& q) {
  Ans a = Ans::Out;
  if (q.is_zero()) a = Ans::In;
  for (const auto& [w, wa] : log_) {
    if (scalar_multiple(*k_, q, w)) {
      a = wa;
      break;
    }
  }
  if (!audit_with(q, a)) {
    a = a == Ans::In ? Ans::Out : Ans::In;
    if (!audit_with(q, a))
      throw OracleInconsistent("greedy completion: neither answer is consistent");
  }
  return a;
}

void EnumeratedType::commit(const DiffPoly& q, Ans a) {
  Nat idx = log_.size();
  if (greedy_) {
    for (Nat i = 0; i < log_.size(); ++i)
      prods_[poly_key(poly_mul(*k_, q, log_[i].first))].push_back({i, idx});
    prods_[poly_key(poly_mul(*k_, q, q))].push_back({idx, idx});
  }
  memo_.emplace(poly_key(q), idx);
  log_.emplace_back(q, a);
}

namespace {

bool product_rule_ok(Ans ua, Ans va, Ans pa) {
  if ((ua == Ans::In || va == Ans::In) && pa == Ans::Out) return false;
  if (ua == Ans::Out && va == Ans::Out && pa == Ans::In) return false;
  return true;  // a field has no zero divisors and absorbs zero
}

}  // namespace

bool EnumeratedType::audit_with(const DiffPoly& q, Ans a) {
  if (q.is_zero() && a == Ans::Out) return false;
  if (!q.is_zero() && poly_is_constant(q) && a == Ans::In) return false;
  for (const auto& [w, wa] : log_)
    if (wa != a && scalar_multiple(*k_, q, w)) return false;
  auto answer_of = [&](const DiffPoly& p) -> std::optional<Ans> {
    auto it = memo_.find(poly_key(p));
    if (it == memo_.end()) return std::nullopt;
    return log_[it->second].second;
  };
  for (const auto& [w, wa] : log_) {
    auto pa = answer_of(poly_mul(*k_, q, w));
    if (pa && !product_rule_ok(a, wa, *pa)) return false;
  }
  auto sq = answer_of(poly_mul(*k_, q, q));
  if (sq && !product_rule_ok(a, a, *sq)) return false;
  auto hit = prods_.find(poly_key(q));
  if (hit != prods_.end()) {
    for (auto [i, j] : hit->second)
      if (!product_rule_ok(log_[i].second, log_[j].second, a)) return false;
  }
  return true;
}

Nat EnumeratedType::audit_all() {
  Nat found = 0;
  auto flag = [&](const std::string& why) {
    inconsist_.push_back(why);
    ++found;
  };
  for (Nat i = 0; i < log_.size(); ++i) {
    const auto& [q, a] = log_[i];
    if (q.is_zero() && a == Ans::Out) flag("zero answered Out");
    if (!q.is_zero() && poly_is_constant(q) && a == Ans::In)
      flag("nonzero constant answered In: " + poly_str(*k_, q));
    for (Nat j = i + 1; j < log_.size(); ++j) {
      const auto& [w, wa] = log_[j];
      if (a != wa && scalar_multiple(*k_, q, w))
        flag("scalar multiples disagree: " + poly_str(*k_, q) + " vs " +
             poly_str(*k_, w));
      auto it = memo_.find(poly_key(poly_mul(*k_, q, w)));
      if (it != memo_.end() && !product_rule_ok(a, wa, log_[it->second].second))
        flag("product rule broken: " + poly_str(*k_, q) + " * " + poly_str(*k_, w));
    }
    auto sq = memo_.find(poly_key(poly_mul(*k_, q, q)));
    if (sq != memo_.end() && !product_rule_ok(a, a, log_[sq->second].second))
      flag("product rule broken on square: " + poly_str(*k_, q));
  }
  return found;
}

std::vector<std::pair<std::string, Ans>> EnumeratedType::committed() const {
  std::vector<std::pair<std::string, Ans>> out;
  for (const auto& [w, a] : log_) out.emplace_back(poly_str(*k_, w), a);
  return out;
}

std::shared_ptr<EnumeratedType> enumerate_type(std::shared_ptr<FieldPresentation> k,
                                               const DiffPoly& p,
                                               std::shared_ptr<ConsistencyDecider> decider,
                                               Nat budget) {
  return std::make_shared<EnumeratedType>(std::move(k), p, std::move(decider), budget);
}

std::vector<TypeEntry> enumerate_types_n(Nat n, Nat budget,
                                         std::shared_ptr<ConsistencyDecider> decider,
                                         Nat tuple_size_bound, Nat universe_bound) {
  std::vector<TypeEntry> out;
  auto tuples = enumerate_formal_tuples(n, tuple_size_bound);
  for (Nat ti = 0; ti < tuples.size(); ++ti) {
    const auto& tuple = tuples[ti];
    TypeEntry e;
    e.tuple_index = ti;
    e.tuple = tuple;
    auto k = FieldPresentation::rationals();
    for (Nat i = 0; i < n; ++i) {
      auto mp = materialize_poly(tuple[i], k);
      e.undefined.push_back(!mp.has_value());
      std::shared_ptr<EnumeratedType> lam;
      if (!mp)
        lam = std::make_shared<EnumeratedType>(k, poly_zero(), decider, budget, true);
      else
        lam = enumerate_type(k, *mp, decider, budget);
      try {
        auto next = extend_field(k, lam, universe_bound);
        e.types.push_back(lam);
        e.fields.push_back(next);
        k = next;
      } catch (const TypeStalled& st) {
        e.stalled = true;
        e.stalled_coord = i;
        e.stall_query = st.query;
        break;
      } catch (const OracleInconsistent& oi) {
        e.inconsistent = true;
        e.inconsistency = oi.what();
        break;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace limitcopy
