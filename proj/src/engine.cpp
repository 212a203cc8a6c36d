#include "limitcopy/engine.hpp"

#include <algorithm>
#include <memory>

namespace limitcopy {

namespace {

constexpr Nat kPledgeDepth = 16;

SizeGuess inf() { return SizeGuess::infinite(); }

// Per-stage rank view over the enumerated prefix of an order fixture.
struct OrderView {
  Nat stage = ~Nat(0);
  Nat count = 0;
  std::vector<Nat> rank;  // element id -> rank among enumerated, by order

  void rebuild(const OrderFixture& fx, Nat s) {
    stage = s;
    count = fx.count_at(s);
    std::vector<Nat> sorted(count);
    for (Nat e = 0; e < count; ++e) sorted[e] = e;
    std::sort(sorted.begin(), sorted.end(),
              [&](Nat a, Nat b) { return fx.less(a, b); });
    rank.assign(fx.elems.size(), ~Nat(0));
    for (Nat i = 0; i < count; ++i) rank[sorted[i]] = i;
  }
};

B1TypeCode order_label_code(const OrderFixture& fx, const OrderView& v,
                            const std::vector<Nat>& tuple, Nat s) {
  std::vector<Nat> sorted = tuple;
  for (Nat e : sorted)
    if (!fx.enumerated(e, s)) throw UnknownElement("tuple element not enumerated");
  std::sort(sorted.begin(), sorted.end(), [&](Nat a, Nat b) { return fx.less(a, b); });
  std::vector<SizeGuess> sizes;
  auto clamp = [&](Nat n) {
    if (fx.bound && n > *fx.bound) return inf();
    return SizeGuess::finite(n);
  };
  if (sorted.empty()) {
    sizes.push_back(fx.bound ? clamp(v.count) : inf());
    return make_order_type(std::move(sizes));
  }
  sizes.push_back(fx.bound ? clamp(v.rank[sorted.front()]) : inf());
  for (Nat i = 0; i + 1 < sorted.size(); ++i) {
    Nat a = sorted[i], b = sorted[i + 1];
    Nat between = v.rank[b] - v.rank[a] - 1;
    if (fx.bound) {
      sizes.push_back(clamp(between));
    } else if (fx.same_block(a, b) && s >= fx.blocks[fx.elems[a].block].reveal) {
      sizes.push_back(fx.true_interval(a, b));
    } else {
      sizes.push_back(inf());
    }
  }
  sizes.push_back(fx.bound ? clamp(v.count - 1 - v.rank[sorted.back()]) : inf());
  return make_order_type(std::move(sizes));
}

}  // namespace

RLabeling fixture_labeling(const Presentation& p) {
  auto pp = std::make_shared<Presentation>(p);
  if (p.tag() == ClassTag::LinearOrder) {
    auto view = std::make_shared<OrderView>();
    RLabeling lab;
    lab.code = [pp, view](const std::vector<Nat>& tuple, Nat s) {
      const auto& fx = pp->order();
      if (view->stage != s) view->rebuild(fx, s);
      return order_label_code(fx, *view, tuple, s);
    };
    lab.maybe_changed = [pp](Nat s) {
      const auto& fx = pp->order();
      if (s == 0) return true;
      if (fx.count_at(s) != fx.count_at(s - 1)) return true;
      if (!fx.bound)
        for (const auto& b : fx.blocks)
          if (b.reveal == s) return true;
      return false;
    };
    return lab;
  }
  RLabeling lab;
  lab.code = [pp](const std::vector<Nat>& tuple, Nat s) {
    return observe_tuple_type(*pp, tuple, s);
  };
  return lab;
}

Requirement requirement_at(Nat priority) {
  Requirement r;
  r.priority = priority;
  r.kind = (priority % 2 == 0) ? Requirement::EvenIntoRange : Requirement::OddIntoDomain;
  r.target = priority / 2;
  return r;
}

std::optional<Nat> ConstructionState::image_of(Nat b) const {
  for (const auto& e : f)
    if (e.b == b) return e.a;
  return std::nullopt;
}

std::optional<Nat> ConstructionState::preimage_of(Nat a) const {
  for (const auto& e : f)
    if (e.a == a) return e.b;
  return std::nullopt;
}

std::map<Nat, Nat> ConstructionState::current_map() const {
  std::map<Nat, Nat> m;
  for (const auto& e : f) m[e.b] = e.a;
  return m;
}

Nat ConstructionState::satisfied_upto() const {
  Nat k = 0;
  while (k < satisfied.size() && satisfied[k]) ++k;
  return k;
}

namespace {

std::vector<Nat> mapped_a_sorted(const ConstructionState& st, const OrderFixture& fx) {
  std::vector<Nat> as;
  for (const auto& e : st.f) as.push_back(e.a);
  std::sort(as.begin(), as.end(), [&](Nat a, Nat b) { return fx.less(a, b); });
  return as;
}

// Key-interval of B into which the image of A-element a must fall: the gap
// between the images of a's mapped neighbours.
struct KeyGap {
  std::optional<Rat> left, right;
};

KeyGap gap_for(const ConstructionState& st, const OrderFixture& fx, Nat a) {
  KeyGap g;
  std::optional<Nat> best_l, best_r;
  for (const auto& e : st.f) {
    if (fx.less(e.a, a) && (!best_l || fx.less(*best_l, e.a))) {
      best_l = e.a;
      g.left = st.b_key[e.b];
    }
    if (fx.less(a, e.a) && (!best_r || fx.less(e.a, *best_r))) {
      best_r = e.a;
      g.right = st.b_key[e.b];
    }
  }
  return g;
}

// Unmapped B element already committed inside the gap.  A b previously mapped
// to this very a (before an injury) wins, so re-satisfaction reuses the same
// pairing instead of drifting; otherwise least key.
std::optional<Nat> adoptable_in(const ConstructionState& st, const KeyGap& g, Nat a) {
  std::optional<Nat> pick;
  for (Nat b = 0; b < st.b_count; ++b) {
    if (st.image_of(b)) continue;
    if (g.left && !(st.b_key[b] > *g.left)) continue;
    if (g.right && !(st.b_key[b] < *g.right)) continue;
    auto it = st.last_image.find(b);
    if (it != st.last_image.end() && it->second == a) return b;
    if (!pick || st.b_key[b] < st.b_key[*pick]) pick = b;
  }
  return pick;
}

// Committed position for a new B element matching A-element a: the left edge
// of the gap.
Rat new_key_for(const ConstructionState& st, const OrderFixture& fx, Nat a) {
  if (st.b_count == 0) return Rat(0);
  KeyGap g = gap_for(st, fx, a);
  if (g.left) {
    std::optional<Rat> next;
    for (const auto& k : st.b_key)
      if (k > *g.left && (!next || k < *next)) next = k;
    if (!next) return *g.left + 1;
    return (*g.left + *next) / 2;
  }
  // nothing mapped to the left: go left of everything relevant
  Rat m = st.b_key[0];
  for (const auto& k : st.b_key) m = std::min(m, k);
  if (g.right) m = std::min(m, *g.right);
  return m - 1;
}

Nat count_less_in(const std::vector<Nat>& cbar, const OrderFixture& fx, Nat a) {
  Nat j = 0;
  for (Nat c : cbar)
    if (fx.less(c, a)) ++j;
  return j;
}

bool agrees_with_pledge(const GeneratedType& q, const B1TypeCode& ext, Nat x_rank,
                        Nat tuple_len, Nat upto) {
  for (Nat idx = 0; idx < std::min(upto, kPledgeDepth * 4); ++idx) {
    ClassAtom atom = atom_at(ClassTag::LinearOrder, tuple_len, idx);
    auto v = q.verdict(atom);
    if (v == GeneratedType::Verdict::Undecided) continue;
    if (extended_satisfies(ext, x_rank, atom) != (v == GeneratedType::Verdict::True))
      return false;
  }
  return true;
}

}  // namespace

ConstructionState engine_step(ConstructionState st, const Presentation& p,
                              const RLabeling& labeler, Nat s) {
  if (p.tag() != ClassTag::LinearOrder)
    throw UnsupportedFormula("engine supports linear-order presentations");
  const auto& fx = p.order();
  auto trace_line = [&](const std::string& act, Nat req, const std::string& injury = "") {
    std::string line = "s=" + std::to_string(s) + " act=" + act +
                       " req=" + std::to_string(req);
    if (!injury.empty()) line += " injury=" + injury;
    st.trace.push_back(std::move(line));
  };
  if (st.satisfied.size() <= s) {
    st.satisfied.resize(s + 1, 0);
    st.supports.resize(s + 1);
  }

  // (i) revalidate the guesses supporting satisfied requirements
  bool revalidate = !labeler.maybe_changed || labeler.maybe_changed(s);
  for (Nat k = 0; revalidate && k < st.satisfied.size(); ++k) {
    if (!st.satisfied[k]) continue;
    bool ok = true;
    for (const auto& sup : st.supports[k]) {
      if (!(labeler.code(sup.tuple, s) == sup.code)) {
        ok = false;
        break;
      }
    }
    if (ok) continue;
    st.injury_log.push_back({s, k, "label-change"});
    trace_line("rollback", k, "label-change");
    std::vector<ConstructionState::MapEntry> keep;
    for (const auto& e : st.f) {
      if (e.req >= k) st.pledges.erase(e.b);
      else keep.push_back(e);
    }
    st.f = std::move(keep);
    for (Nat j = k; j < st.satisfied.size(); ++j) {
      st.satisfied[j] = 0;
      st.supports[j].clear();
    }
    break;
  }

  // (ii) attack the least unsatisfied requirement able to act
  Nat enum_n = fx.count_at(s);
  bool acted = false, created = false;
  for (Nat k = 0; k <= s && !acted; ++k) {
    if (st.satisfied[k]) continue;
    Requirement r = requirement_at(k);
    if (r.kind == Requirement::EvenIntoRange) {
      Nat a = r.target;
      if (a >= enum_n) continue;
      if (auto b = st.preimage_of(a)) {
        auto tup = mapped_a_sorted(st, fx);
        st.supports[k] = {{tup, labeler.code(tup, s)}};
        st.satisfied[k] = 1;
        trace_line("confirm", k);
        acted = true;
        break;
      }
      // prefer a b already committed inside the right gap; else create one
      Nat b;
      if (auto adopt = adoptable_in(st, gap_for(st, fx, a), a)) {
        b = *adopt;
      } else {
        Rat key = new_key_for(st, fx, a);
        b = st.b_count++;
        st.b_key.push_back(key);
        st.b_created.push_back(s);
        created = true;
      }
      st.f.push_back({b, a, k});
      st.last_image[b] = a;
      auto tup = mapped_a_sorted(st, fx);
      st.supports[k] = {{tup, labeler.code(tup, s)}};
      st.satisfied[k] = 1;
      trace_line("map-even", k);
      acted = true;
      break;
    }
    // odd: b into dom(f)
    Nat b = r.target;
    if (b >= st.b_count) continue;
    if (st.image_of(b)) {
      auto tup = mapped_a_sorted(st, fx);
      st.supports[k] = {{tup, labeler.code(tup, s)}};
      st.satisfied[k] = 1;
      trace_line("confirm", k);
      acted = true;
      break;
    }
    auto cbar = mapped_a_sorted(st, fx);
    Nat j = 0;
    for (const auto& e : st.f)
      if (st.b_key[e.b] < st.b_key[b]) ++j;
    B1TypeCode base = labeler.code(cbar, s);
    ClassAtom phi;
    phi.tag = ClassTag::LinearOrder;
    phi.payload = OrdAtom{OrdAtom::XLeft, j, 0};
    GeneratedType q;
    try {
      q = complete_type(base, phi, kPledgeDepth);
    } catch (const PreconditionViolated&) {
      continue;  // interval currently looks unable to host b; retry later
    }
    st.pledges[b] = q;
    for (Nat a = 0; a < enum_n; ++a) {
      if (st.preimage_of(a)) continue;
      if (count_less_in(cbar, fx, a) != j) continue;
      auto ext_tuple = cbar;
      ext_tuple.push_back(a);
      B1TypeCode ext = labeler.code(ext_tuple, s);
      if (!agrees_with_pledge(q, ext, j, cbar.size(), s)) continue;
      st.f.push_back({b, a, k});
      st.last_image[b] = a;
      std::sort(ext_tuple.begin(), ext_tuple.end(),
                [&](Nat x, Nat y) { return fx.less(x, y); });
      st.supports[k] = {{cbar, base}, {ext_tuple, ext}};
      st.satisfied[k] = 1;
      trace_line("map-odd", k);
      acted = true;
      break;
    }
  }

  // (iii) progress: keep B's enumeration moving while A is ahead.  New filler
  // elements are committed at the gap of the least unmapped A element, so the
  // requirement that later handles that element finds them in position; only
  // one pending filler at a time.
  bool pending = false;
  for (Nat b = 0; b < st.b_count && !pending; ++b)
    if (!st.image_of(b)) pending = true;
  if (!created && !pending && st.b_count < enum_n) {
    std::optional<Nat> tgt;
    for (Nat a = 0; a < enum_n && !tgt; ++a)
      if (!st.preimage_of(a)) tgt = a;
    Rat key = st.b_count == 0 ? Rat(0)
              : tgt           ? new_key_for(st, fx, *tgt)
                    : *std::max_element(st.b_key.begin(), st.b_key.end()) + 1;
    st.b_key.push_back(key);
    st.b_created.push_back(s);
    ++st.b_count;
    trace_line("extend", 2 * (st.b_count - 1) + 1);
  } else if (!acted) {
    trace_line("idle", s);
  }
  st.stages_done = s + 1;
  return st;
}

ConstructionState run_engine(const Presentation& p, const RLabeling& labeler, Nat horizon) {
  if (horizon == 0) throw InvalidHorizon();
  ConstructionState st;
  for (Nat s = 0; s < horizon; ++s) st = engine_step(std::move(st), p, labeler, s);
  return st;
}

Presentation built_copy(const ConstructionState& st) {
  auto fx = std::make_shared<OrderFixture>();
  for (Nat b = 0; b < st.b_count; ++b) {
    fx->blocks.push_back({st.b_key[b], 1, 0});
    fx->elems.push_back({b, 0});
    fx->arrival.push_back(st.b_created[b]);
  }
  fx->validate();
  return Presentation::linear_order(fx);
}

namespace {

bool rel_true(const Presentation& P, Nat x, Nat y) {
  switch (P.tag()) {
    case ClassTag::LinearOrder: return P.order().less(x, y);
    case ClassTag::BooleanAlgebra: return P.ba().elems.at(x).leq(P.ba().elems.at(y));
    case ClassTag::Tree: return P.tree_fx().nodes.at(x).parent == y;
    case ClassTag::EquivalenceStructure:
      return P.equiv().class_of.at(x) == P.equiv().class_of.at(y);
  }
  return false;
}

}  // namespace

bool verify_prefix_isomorphism(const Presentation& B, const Presentation& A,
                               const std::map<Nat, Nat>& f, Nat k) {
  for (Nat b = 0; b < k; ++b)
    if (!f.count(b)) throw InsufficientPrefix("map does not cover B prefix");
  std::set<Nat> image;
  for (const auto& [b, a] : f)
    if (!image.insert(a).second) return false;
  for (Nat a = 0; a < k; ++a)
    if (!image.count(a)) throw InsufficientPrefix("map does not cover A prefix");
  for (const auto& [b1, a1] : f)
    for (const auto& [b2, a2] : f)
      if (rel_true(B, b1, b2) != rel_true(A, a1, a2)) return false;
  return true;
}

}  // namespace limitcopy
