#include "limitcopy/completion.hpp"

#include <algorithm>

namespace limitcopy {

namespace {

SizeGuess inf() { return SizeGuess::infinite(); }

void order_placements(const OrderTypeCode& p, Nat D, std::vector<Placement>& out) {
  const auto& S = p.sizes;
  for (Nat j = 0; j < S.size(); ++j) {
    auto push = [&](SizeGuess left, SizeGuess right) {
      std::vector<SizeGuess> sizes;
      sizes.insert(sizes.end(), S.begin(), S.begin() + j);
      sizes.push_back(left);
      sizes.push_back(right);
      sizes.insert(sizes.end(), S.begin() + j + 1, S.end());
      out.push_back({make_order_type(std::move(sizes)), j});
    };
    if (S[j].is_infinite()) {
      for (Nat l = 0; l <= D; ++l) push(SizeGuess::finite(l), inf());
      for (Nat r = 0; r <= D; ++r) push(inf(), SizeGuess::finite(r));
      push(inf(), inf());
    } else {
      Nat k = S[j].value();
      // x takes one slot of a finite interval
      for (Nat l = 0; k >= 1 && l <= k - 1; ++l)
        push(SizeGuess::finite(l), SizeGuess::finite(k - 1 - l));
    }
  }
}

void ba_placements(const BATypeCode& p, Nat D, std::vector<Placement>& out) {
  std::vector<Nat> masks;
  std::vector<std::vector<std::pair<SizeGuess, SizeGuess>>> options;
  for (const auto& [mask, sz] : p.cells) {
    masks.push_back(mask);
    std::vector<std::pair<SizeGuess, SizeGuess>> opts;
    if (sz.is_infinite()) {
      for (Nat i = 0; i <= D; ++i) opts.push_back({SizeGuess::finite(i), inf()});
      for (Nat o = 0; o <= D; ++o) opts.push_back({inf(), SizeGuess::finite(o)});
      opts.push_back({inf(), inf()});
    } else {
      for (Nat i = 0; i <= sz.value(); ++i)
        opts.push_back({SizeGuess::finite(i), SizeGuess::finite(sz.value() - i)});
    }
    options.push_back(std::move(opts));
  }
  Nat total = 1;
  for (const auto& o : options) {
    if (total > 2000000 / std::max<Nat>(o.size(), 1))
      throw UnsupportedFormula("boolean-algebra placement space too large");
    total *= o.size();
  }
  Nat n = p.tuple_len;
  for (Nat t = 0; t < total; ++t) {
    Nat rem = t;
    std::map<Nat, SizeGuess> cells;
    for (Nat c = 0; c < options.size(); ++c) {
      const auto& [in_sz, out_sz] = options[c][rem % options[c].size()];
      rem /= options[c].size();
      if (in_sz.is_infinite() || in_sz.value() > 0)
        cells[masks[c] | (Nat(1) << n)] = in_sz;
      if (out_sz.is_infinite() || out_sz.value() > 0) cells[masks[c]] = out_sz;
    }
    out.push_back({make_ba_type(n + 1, std::move(cells)), n});
  }
}

void tree_placements(const TreeTypeCode& p, Nat max_pattern, std::vector<Placement>& out) {
  Nat n = p.tuple_len();
  std::vector<TreeTypeCode::Label> labels;
  labels.push_back({});  // infinite
  for (Nat size = 1; size <= std::max<Nat>(max_pattern, 1); ++size)
    for (const auto& t : patterns_of_size(size)) {
      TreeTypeCode::Label l;
      l.infinite = false;
      l.finite_tree = t;
      labels.push_back(std::move(l));
    }
  auto push = [&](Nat parent, bool via_intermediate, const TreeTypeCode::Label& xlab) {
    TreeTypeCode code = p;
    Nat par = parent;
    if (via_intermediate) {
      code.parent.push_back(parent);
      code.labels.push_back({});
      code.marks.push_back(0);
      par = code.parent.size() - 1;
    }
    code.parent.push_back(par);
    code.labels.push_back(xlab);
    code.marks.push_back(n + 1);
    Nat x_pos = code.parent.size() - 1;
    out.push_back({make_tree_type(std::move(code)), x_pos});
  };
  for (Nat v = 0; v < p.parent.size(); ++v) {
    if (p.labels[v].infinite) {
      for (const auto& l : labels) push(v, false, l);
      // x strictly deeper, below an unnamed infinite successor of v
      for (const auto& l : labels) push(v, true, l);
    } else {
      // successors of a finite-labeled node carry one of its child subtrees
      for (const auto& c : p.labels[v].finite_tree.children) {
        TreeTypeCode::Label l;
        l.infinite = false;
        l.finite_tree = c;
        l.finite_tree.canonicalize();
        push(v, false, l);
      }
    }
  }
}

struct LitBudget {
  Nat max_count = 0;
  Nat max_pattern = 0;
};

LitBudget budget_of(const std::vector<Literal>& lits) {
  LitBudget b;
  for (const auto& lit : lits) {
    switch (lit.atom.tag) {
      case ClassTag::LinearOrder:
        b.max_count = std::max(b.max_count, lit.atom.ord().count);
        break;
      case ClassTag::BooleanAlgebra:
        b.max_count = std::max(b.max_count, lit.atom.ba().count);
        break;
      case ClassTag::Tree:
        b.max_pattern = std::max(b.max_pattern, lit.atom.tree().pattern.node_count());
        break;
      default:
        break;
    }
  }
  return b;
}

}  // namespace

std::vector<Placement> candidate_placements(const B1TypeCode& p, Nat max_count,
                                            Nat max_pattern) {
  std::vector<Placement> out;
  switch (p.tag) {
    case ClassTag::LinearOrder:
      order_placements(p.ord(), max_count + 1, out);
      break;
    case ClassTag::BooleanAlgebra:
      ba_placements(p.ba(), max_count + 1, out);
      break;
    case ClassTag::Tree:
      tree_placements(p.tree(), max_pattern, out);
      break;
    default:
      throw UnsupportedFormula("no placements for this class");
  }
  return out;
}

bool literals_consistent(const B1TypeCode& p, const std::vector<Literal>& lits) {
  auto b = budget_of(lits);
  for (const auto& pl : candidate_placements(p, b.max_count, b.max_pattern)) {
    bool ok = true;
    for (const auto& lit : lits) {
      if (extended_satisfies(pl.ext, pl.x_pos, lit.atom) != lit.positive) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

GeneratedType::Verdict GeneratedType::verdict(const ClassAtom& atom) const {
  for (const auto& lit : committed)
    if (lit.atom == atom) return Verdict::True;
  for (const auto& lit : universals)
    if (lit.atom == atom) return Verdict::False;
  return Verdict::Undecided;
}

GeneratedType complete_type(const B1TypeCode& p, const ClassAtom& phi, Nat depth) {
  GeneratedType q;
  q.base = p;
  q.depth = depth;
  if (!phi.mentions_x()) {
    if (!type_satisfies(p, phi))
      throw PreconditionViolated("completion seed not consequence of base type");
  } else if (!literals_consistent(p, {{phi, true}})) {
    throw PreconditionViolated("completion seed inconsistent with base type");
  }
  q.committed.push_back({phi, true});
  Nat n = 0;
  switch (p.tag) {
    case ClassTag::LinearOrder: n = p.ord().tuple_len(); break;
    case ClassTag::BooleanAlgebra: n = p.ba().tuple_len; break;
    case ClassTag::Tree: n = p.tree().tuple_len(); break;
    default: throw UnsupportedFormula("no completion for this class");
  }
  for (Nat idx = 0; idx < depth; ++idx) {
    ClassAtom atom = atom_at(p.tag, n, idx);
    if (atom == phi) continue;
    if (!atom.mentions_x()) {
      if (type_satisfies(p, atom)) q.committed.push_back({atom, true});
      else q.universals.push_back({atom, false});
      continue;
    }
    auto trial = q.committed;
    trial.push_back({atom, true});
    if (literals_consistent(p, trial)) q.committed.push_back({atom, true});
    else q.universals.push_back({atom, false});
  }
  return q;
}

bool is_generated(const B1TypeCode& p, const GeneratedType& q) {
  if (!(q.base == p)) return false;
  std::vector<Literal> x_committed;
  for (const auto& lit : q.committed) {
    if (!lit.atom.mentions_x()) {
      if (type_satisfies(p, lit.atom) != lit.positive) return false;
    } else {
      x_committed.push_back(lit);
    }
  }
  if (!literals_consistent(p, x_committed)) return false;
  for (const auto& lit : q.universals) {
    if (!lit.atom.mentions_x()) {
      if (type_satisfies(p, lit.atom) != lit.positive) return false;
      continue;
    }
    // the negation must be forced by p plus the committed conjunction
    auto trial = x_committed;
    trial.push_back({lit.atom, !lit.positive});
    if (literals_consistent(p, trial)) return false;
  }
  return true;
}

}  // namespace limitcopy
