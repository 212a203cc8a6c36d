#include "limitcopy/diffalg/field.hpp"

#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace limitcopy {

namespace {

using boost::multiprecision::cpp_int;

Index zigzag(const cpp_int& n) {
  if (n >= 0) return Index(n * 2);
  return Index(-n * 2 - 1);
}

cpp_int unzigzag(const Index& z) {
  if (z % 2 == 0) return cpp_int(z / 2);
  return cpp_int(-((z + 1) / 2));
}

std::string frac_key(const FieldPresentation::Frac& f) {
  return poly_key(f.num) + "/" + poly_key(f.den);
}

}  // namespace

Index rat_code(const Rat& r) {
  cpp_int num = boost::multiprecision::numerator(r);
  cpp_int den = boost::multiprecision::denominator(r);
  return pair_index(zigzag(num), Index(den - 1));
}

std::optional<Rat> rat_decode(const Index& z) {
  Index a, b;
  unpair_index(z, a, b);
  cpp_int num = unzigzag(a);
  cpp_int den = cpp_int(b) + 1;
  if (num == 0 && den != 1) return std::nullopt;
  if (boost::multiprecision::gcd(cpp_int(boost::multiprecision::abs(num)), den) != 1)
    return std::nullopt;
  return Rat(num, den);
}

std::shared_ptr<FieldPresentation> FieldPresentation::rationals() {
  auto k = std::make_shared<FieldPresentation>();
  k->level = 0;
  k->all_constants = true;
  k->from_rational(0);
  k->from_rational(1);
  return k;
}

Nat FieldPresentation::from_rational(const Rat& r) {
  if (level == 0) {
    auto it = rat_ids.find(r);
    if (it != rat_ids.end()) return it->second;
    Nat id = rats.size();
    rats.push_back(r);
    rat_ids.emplace(r, id);
    return id;
  }
  return embed(base->from_rational(r));
}

Nat FieldPresentation::embed(Nat base_id) {
  if (level == 0) throw PreconditionViolated("embed: level-0 field has no base");
  // the zero of the base must embed as the syntactically zero numerator
  Frac f{base->is_zero(base_id) ? poly_zero() : poly_coef(base_id),
         poly_coef(base->one())};
  auto id = intern(std::move(f));
  if (!id) throw OracleInconsistent("embed: oracle killed a unit denominator");
  return *id;
}

Nat FieldPresentation::generator() const {
  if (level == 0) throw PreconditionViolated("generator: level-0 field has none");
  return gen;
}

bool FieldPresentation::lambda_zero(const DiffPoly& q) {
  Ans a = lambda->decide(q);
  if (q.is_zero() && a != Ans::In)
    throw OracleInconsistent("oracle refutes the zero polynomial");
  if (!q.is_zero() && poly_is_constant(q) && a == Ans::In)
    throw OracleInconsistent("oracle kills a nonzero constant");
  return a == Ans::In;
}

bool FieldPresentation::is_zero(Nat id) {
  if (level == 0) return rats.at(id) == 0;
  return lambda_zero(fracs.at(id).num);
}

std::optional<Nat> FieldPresentation::intern(Frac f) {
  std::string key = frac_key(f);
  auto hit = frac_ids.find(key);
  if (hit != frac_ids.end()) return hit->second;
  if (lambda_zero(f.den)) return std::nullopt;
  std::optional<Nat> match;
  for (Nat j = 0; j < fracs.size(); ++j) {
    DiffPoly cross = poly_sub(*base, poly_mul(*base, f.num, fracs[j].den),
                              poly_mul(*base, fracs[j].num, f.den));
    if (lambda_zero(cross)) {
      if (match)
        throw OracleInconsistent("name equal to two distinct universe entries");
      match = j;
    }
  }
  if (match) {
    frac_ids.emplace(std::move(key), *match);
    return match;
  }
  Nat id = fracs.size();
  fracs.push_back(std::move(f));
  frac_ids.emplace(std::move(key), id);
  return id;
}

namespace {

Nat intern_expect(FieldPresentation& k, FieldPresentation::Frac f) {
  auto id = k.intern(std::move(f));
  if (!id)
    throw OracleInconsistent("product of oracle-nonzero denominators became 0");
  return *id;
}

}  // namespace

Nat FieldPresentation::add(Nat a, Nat b) {
  if (level == 0) return from_rational(rats.at(a) + rats.at(b));
  const Frac &fa = fracs.at(a), fb = fracs.at(b);
  DiffPoly num = poly_add(*base, poly_mul(*base, fa.num, fb.den),
                          poly_mul(*base, fb.num, fa.den));
  return intern_expect(*this, {std::move(num), poly_mul(*base, fa.den, fb.den)});
}

Nat FieldPresentation::neg(Nat a) {
  if (level == 0) return from_rational(-rats.at(a));
  const Frac& fa = fracs.at(a);
  return intern_expect(*this, {poly_neg(*base, fa.num), fa.den});
}

Nat FieldPresentation::sub(Nat a, Nat b) { return add(a, neg(b)); }

Nat FieldPresentation::mul(Nat a, Nat b) {
  if (level == 0) return from_rational(rats.at(a) * rats.at(b));
  const Frac &fa = fracs.at(a), fb = fracs.at(b);
  return intern_expect(*this, {poly_mul(*base, fa.num, fb.num),
                               poly_mul(*base, fa.den, fb.den)});
}

std::optional<Nat> FieldPresentation::div(Nat a, Nat b) {
  if (is_zero(b)) return std::nullopt;
  if (level == 0) return from_rational(rats.at(a) / rats.at(b));
  const Frac &fa = fracs.at(a), fb = fracs.at(b);
  return intern_expect(*this, {poly_mul(*base, fa.num, fb.den),
                               poly_mul(*base, fa.den, fb.num)});
}

Nat FieldPresentation::delta(Nat a) {
  if (level == 0) return zero();
  const Frac& fa = fracs.at(a);
  DiffPoly dn = differentiate(*base, fa.num);
  DiffPoly dd = differentiate(*base, fa.den);
  DiffPoly num = poly_sub(*base, poly_mul(*base, dn, fa.den),
                          poly_mul(*base, fa.num, dd));
  return intern_expect(*this, {std::move(num), poly_mul(*base, fa.den, fa.den)});
}

void FieldPresentation::grow_to(Nat universe_bound) {
  if (level == 0) {
    while (rats.size() < universe_bound) {
      auto r = rat_decode(frontier++);
      if (r) from_rational(*r);
    }
    return;
  }
  while (fracs.size() < universe_bound) {
    Index ni, di;
    unpair_index(frontier++, ni, di);
    // indices into the list of valid polynomial codes over the base, so the
    // name enumeration is dense
    auto num = base->poly_from_code(nth_base_poly_code(static_cast<Nat>(ni)));
    auto den = base->poly_from_code(nth_base_poly_code(static_cast<Nat>(di)));
    if (den->is_zero()) continue;
    intern({std::move(*num), std::move(*den)});
  }
}

const Index& FieldPresentation::nth_base_poly_code(Nat i) {
  if (level == 0)
    throw PreconditionViolated("nth_base_poly_code: level-0 field has no base");
  while (base_codes.size() <= i) {
    if (base->poly_from_code(base_scan)) base_codes.push_back(base_scan);
    ++base_scan;
  }
  return base_codes[i];
}

std::optional<DiffPoly> FieldPresentation::poly_from_code(const Index& z) {
  DiffPoly p;
  Index prev_mono = 0;
  bool first = true;
  for (const Index& pc : seq_decode(z)) {
    Index mc, cc;
    unpair_index(pc, mc, cc);
    if (!first && mc <= prev_mono) return std::nullopt;  // canonical order
    first = false;
    prev_mono = mc;
    Mono m;
    for (const Index& e : seq_decode(mc)) {
      if (e > 1000) return std::nullopt;  // desk-scale exponent cap
      m.push_back(static_cast<Nat>(e));
    }
    if (!m.empty() && m.back() == 0) return std::nullopt;  // untrimmed
    Nat coef;
    if (level == 0) {
      auto r = rat_decode(cc);
      if (!r || *r == 0) return std::nullopt;
      coef = from_rational(*r);
    } else {
      if (cc >= fracs.size()) return std::nullopt;
      coef = static_cast<Nat>(cc);
      if (is_zero(coef)) return std::nullopt;
    }
    p.terms.emplace(std::move(m), coef);
  }
  return p;
}

std::optional<Nat> FieldPresentation::coef_at(Nat k) {
  if (level == 0) {
    // Canonical nonzero rationals in code order; interned on demand and
    // cached, the stream is rescanned constantly by divisor search
    while (coef_cache.size() <= k) {
      if (coef_scan > 100000) return std::nullopt;
      auto r = rat_decode(coef_scan++);
      if (r && *r != 0) coef_cache.push_back(from_rational(*r));
    }
    return coef_cache[k];
  }
  Nat seen = 0;
  for (Nat id = 0; id < fracs.size(); ++id) {
    if (is_zero(id)) continue;
    if (seen++ == k) return id;
  }
  return std::nullopt;
}

std::string FieldPresentation::name_str(Nat id) {
  if (level == 0) {
    std::ostringstream os;
    os << rats.at(id);
    return os.str();
  }
  const Frac& f = fracs.at(id);
  std::string den = poly_str(*base, f.den);
  std::string out = "(" + poly_str(*base, f.num) + ")";
  if (den != "1") out += "/(" + den + ")";
  return out;
}

std::shared_ptr<FieldPresentation> extend_field(std::shared_ptr<FieldPresentation> k,
                                                std::shared_ptr<TypeOracle> lambda,
                                                Nat universe_bound) {
  auto kp = std::make_shared<FieldPresentation>();
  kp->level = k->level + 1;
  kp->base = k;
  kp->lambda = std::move(lambda);
  kp->from_rational(0);
  kp->from_rational(1);
  auto g = kp->intern({poly_var(*k, 0), poly_coef(k->one())});
  if (!g) throw OracleInconsistent("extend_field: oracle killed the constant 1");
  kp->gen = *g;
  kp->all_constants = k->all_constants && kp->lambda->decide(poly_var(*k, 1)) == Ans::In;
  kp->grow_to(universe_bound);
  return kp;
}

}  // namespace limitcopy
