#include "limitcopy/btypes.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace limitcopy {

namespace {

constexpr Nat kMaxBATupleLen = 16;
constexpr Nat kMaxUpSteps = 2;

Nat to_nat(const Index& z, const char* what) {
  if (z > Index(std::numeric_limits<Nat>::max())) throw DecodeError(what);
  return z.convert_to<Nat>();
}

Index ptree_encode(const PlainTree& t) {
  std::vector<Index> cs;
  cs.reserve(t.children.size());
  for (const auto& c : t.children) cs.push_back(ptree_encode(c));
  return seq_encode(cs);
}

PlainTree ptree_decode(const Index& z) {
  PlainTree t;
  for (const auto& c : seq_decode(z)) t.children.push_back(ptree_decode(c));
  return t;
}

// Infinity-absorbing sum.
SizeGuess sg_sum(const SizeGuess& a, const SizeGuess& b, Nat extra) {
  if (a.is_infinite() || b.is_infinite()) return SizeGuess::infinite();
  return SizeGuess::finite(a.value() + b.value() + extra);
}

Index tree_encode_node(const TreeTypeCode& t, Nat v) {
  Index lab = t.labels[v].infinite ? Index(0) : Index(1) + ptree_encode(t.labels[v].finite_tree);
  Index hdr = pair_index(lab, Index(t.marks[v]));
  std::vector<Index> kids;
  for (Nat w = v + 1; w < t.parent.size(); ++w)
    if (t.parent[w] == v) kids.push_back(tree_encode_node(t, w));
  return pair_index(hdr, seq_encode(kids));
}

void tree_decode_node(const Index& code, Nat parent, TreeTypeCode& out) {
  Index hdr, kids, lab, mark;
  unpair_index(code, hdr, kids);
  unpair_index(hdr, lab, mark);
  Nat v = out.parent.size();
  out.parent.push_back(v == 0 ? 0 : parent);
  TreeTypeCode::Label label;
  if (lab == 0) {
    label.infinite = true;
  } else {
    label.infinite = false;
    label.finite_tree = ptree_decode(lab - 1);
  }
  out.labels.push_back(std::move(label));
  out.marks.push_back(to_nat(mark, "tree type: mark overflow"));
  for (const auto& k : seq_decode(kids)) tree_decode_node(k, v, out);
}

void tree_code_validate(const TreeTypeCode& t) {
  std::set<Nat> marks;
  for (Nat m : t.marks)
    if (m > 0 && !marks.insert(m).second)
      throw DecodeError("tree type: duplicate tuple mark");
  for (Nat m = 1; m <= marks.size(); ++m)
    if (!marks.count(m)) throw DecodeError("tree type: tuple marks not contiguous");
  for (Nat v = 1; v < t.parent.size(); ++v)
    if (!t.labels[t.parent[v]].infinite && t.labels[v].infinite)
      throw DecodeError("tree type: infinite node below finite node");
}

// Fixed-length tuple <-> single natural via right-nested pairing.
Index tuple_encode(const std::vector<Index>& vs) {
  Index code = vs.back();
  for (Nat i = vs.size() - 1; i-- > 0;) code = pair_index(vs[i], code);
  return code;
}

std::vector<Index> tuple_decode(Index code, Nat len) {
  std::vector<Index> vs;
  for (Nat i = 0; i + 1 < len; ++i) {
    Index v, rest;
    unpair_index(code, v, rest);
    vs.push_back(v);
    code = rest;
  }
  vs.push_back(code);
  return vs;
}

// Canonical unordered trees with n nodes: generate ordered shapes, then
// canonicalize and dedupe.
std::vector<std::vector<PlainTree>> forests_of(Nat m);

std::vector<PlainTree> ordered_trees_of(Nat n) {
  std::vector<PlainTree> out;
  for (auto& f : forests_of(n - 1)) {
    PlainTree t;
    t.children = std::move(f);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::vector<PlainTree>> forests_of(Nat m) {
  std::vector<std::vector<PlainTree>> out;
  if (m == 0) {
    out.push_back({});
    return out;
  }
  for (Nat k = 1; k <= m; ++k)
    for (const auto& t : ordered_trees_of(k))
      for (const auto& rest : forests_of(m - k)) {
        std::vector<PlainTree> f;
        f.push_back(t);
        f.insert(f.end(), rest.begin(), rest.end());
        out.push_back(std::move(f));
      }
  return out;
}

SizeGuess ba_term_size_guess(const BAFixture& fx, const BATerm& term, Nat s) {
  if (term.is_zero()) return SizeGuess::finite(0);
  if (fx.region_revealed_in(term, s)) return SizeGuess::infinite();
  std::vector<Nat> atoms_below;
  for (Nat e = 0; e < fx.elems.size() && fx.arrival[e] <= s; ++e) {
    if (fx.elems[e].is_zero()) continue;
    if (ba_atom_guess(fx, e, s) == AtomGuess::Atom && fx.elems[e].leq(term))
      atoms_below.push_back(e);
  }
  BATerm acc = BATerm::zero(fx.num_regions);
  for (Nat i = 0; i < atoms_below.size(); ++i) {
    for (Nat j = i + 1; j < atoms_below.size(); ++j)
      if (!fx.elems[atoms_below[i]].disjoint_with(fx.elems[atoms_below[j]]))
        return SizeGuess::infinite();
    acc = join(acc, fx.elems[atoms_below[i]]);
  }
  if (acc == term) return SizeGuess::finite(atoms_below.size());
  return SizeGuess::infinite();
}

BATerm ba_cell_term(const BAFixture& fx, const std::vector<Nat>& tuple, Nat mask) {
  BATerm t = fx.one();
  for (Nat i = 0; i < tuple.size(); ++i) {
    const BATerm& u = fx.elems.at(tuple[i]);
    t = meet(t, (mask >> i) & 1 ? u : u.complement_in(fx.one()));
  }
  return t;
}

// Nodes on the root paths of the tuple, in fixture-id order (parents first).
std::vector<Nat> tree_generated_nodes(const TreeFixture& fx, const std::vector<Nat>& tuple) {
  std::set<Nat> nodes;
  for (Nat u : tuple) {
    Nat v = u;
    for (;;) {
      nodes.insert(v);
      if (v == 0) break;
      v = fx.nodes.at(v).parent;
    }
  }
  return {nodes.begin(), nodes.end()};
}

template <class Finite, class Subtree>
TreeTypeCode tree_code_from(const TreeFixture& fx, const std::vector<Nat>& tuple,
                            Finite is_finite, Subtree subtree) {
  auto nodes = tree_generated_nodes(fx, tuple);
  std::map<Nat, Nat> pos;
  for (Nat i = 0; i < nodes.size(); ++i) pos[nodes[i]] = i;
  TreeTypeCode code;
  for (Nat i = 0; i < nodes.size(); ++i) {
    Nat v = nodes[i];
    code.parent.push_back(i == 0 ? 0 : pos.at(fx.nodes[v].parent));
    TreeTypeCode::Label lab;
    if (is_finite(v)) {
      lab.infinite = false;
      lab.finite_tree = subtree(v);
      lab.finite_tree.canonicalize();
    }
    code.labels.push_back(std::move(lab));
    Nat mark = 0;
    for (Nat p = 0; p < tuple.size(); ++p)
      if (tuple[p] == v) mark = p + 1;
    code.marks.push_back(mark);
  }
  return code;
}

void check_tuple(const std::vector<Nat>& tuple) {
  std::set<Nat> seen(tuple.begin(), tuple.end());
  if (seen.size() != tuple.size())
    throw PreconditionViolated("tuple has repeated elements");
}

}  // namespace

Nat TreeTypeCode::tuple_len() const {
  Nat n = 0;
  for (Nat m : marks)
    if (m > 0) ++n;
  return n;
}

Nat TreeTypeCode::node_of_var(Nat p) const {
  for (Nat v = 0; v < marks.size(); ++v)
    if (marks[v] == p + 1) return v;
  throw PreconditionViolated("tree type: no node for tuple variable");
}

B1TypeCode make_order_type(std::vector<SizeGuess> sizes) {
  if (sizes.empty()) throw PreconditionViolated("order type needs >= 1 interval");
  B1TypeCode t;
  t.tag = ClassTag::LinearOrder;
  t.payload = OrderTypeCode{std::move(sizes)};
  return t;
}

B1TypeCode make_ba_type(Nat tuple_len, std::map<Nat, SizeGuess> cells) {
  if (tuple_len > kMaxBATupleLen)
    throw PreconditionViolated("boolean-algebra tuple too long");
  for (const auto& [mask, sz] : cells)
    if (mask >= (Nat(1) << tuple_len))
      throw PreconditionViolated("boolean-algebra cell mask out of range");
  B1TypeCode t;
  t.tag = ClassTag::BooleanAlgebra;
  t.payload = BATypeCode{tuple_len, std::move(cells)};
  return t;
}

B1TypeCode make_tree_type(TreeTypeCode code) {
  tree_code_validate(code);
  B1TypeCode t;
  t.tag = ClassTag::Tree;
  t.payload = std::move(code);
  return t;
}

Index encode_type(const B1TypeCode& t) {
  switch (t.tag) {
    case ClassTag::LinearOrder: {
      std::vector<Index> cs;
      for (const auto& s : t.ord().sizes) cs.push_back(Index(s.to_code()));
      return seq_encode(cs) - 1;
    }
    case ClassTag::BooleanAlgebra: {
      const auto& c = t.ba();
      std::vector<Index> vs(Nat(1) << c.tuple_len, Index(0));
      for (const auto& [mask, sz] : c.cells) vs.at(mask) = Index(sz.to_code() + 1);
      return pair_index(Index(c.tuple_len), tuple_encode(vs));
    }
    case ClassTag::Tree:
      return tree_encode_node(t.tree(), 0);
    default:
      throw UnsupportedFormula("no type coding for this class");
  }
}

B1TypeCode decode_type(ClassTag tag, const Index& i) {
  if (i < 0) throw DecodeError("negative index");
  switch (tag) {
    case ClassTag::LinearOrder: {
      std::vector<SizeGuess> sizes;
      for (const auto& c : seq_decode(i + 1))
        sizes.push_back(SizeGuess::from_code(to_nat(c, "order type: size code overflow")));
      return make_order_type(std::move(sizes));
    }
    case ClassTag::BooleanAlgebra: {
      Index n, rest;
      unpair_index(i, n, rest);
      if (n > kMaxBATupleLen) throw DecodeError("boolean-algebra type: tuple too long");
      Nat len = n.convert_to<Nat>();
      auto vs = tuple_decode(rest, Nat(1) << len);
      std::map<Nat, SizeGuess> cells;
      for (Nat mask = 0; mask < vs.size(); ++mask) {
        Nat v = to_nat(vs[mask], "boolean-algebra type: cell code overflow");
        if (v > 0) cells[mask] = SizeGuess::from_code(v - 1);
      }
      return make_ba_type(len, std::move(cells));
    }
    case ClassTag::Tree: {
      TreeTypeCode code;
      tree_decode_node(i, 0, code);
      return make_tree_type(std::move(code));
    }
    default:
      throw UnsupportedFormula("no type coding for this class");
  }
}

bool valid_index(ClassTag tag, const Index& i) {
  try {
    decode_type(tag, i);
    return true;
  } catch (const DecodeError&) {
    return false;
  }
}

std::vector<Index> enumerate_valid_indices(ClassTag tag, Nat count) {
  std::vector<Index> out;
  for (Index i = 0; out.size() < count; ++i)
    if (valid_index(tag, i)) out.push_back(i);
  return out;
}

bool ClassAtom::mentions_x() const {
  switch (tag) {
    case ClassTag::LinearOrder:
      return ord().kind != OrdAtom::TupleAtLeast;
    case ClassTag::BooleanAlgebra:
      return ba().kind != BAAtom::CellAtLeast;
    case ClassTag::Tree:
      return tree().kind != TreeAtom::NodeEmbed;
    default:
      return false;
  }
}

std::vector<PlainTree> patterns_of_size(Nat n) {
  if (n == 0) return {};
  std::set<PlainTree> canon;
  for (auto& t : ordered_trees_of(n)) {
    t.canonicalize();
    canon.insert(std::move(t));
  }
  return {canon.begin(), canon.end()};
}

ClassAtom atom_at(ClassTag tag, Nat tuple_len, Nat idx) {
  ClassAtom a;
  a.tag = tag;
  switch (tag) {
    case ClassTag::LinearOrder: {
      Nat n = tuple_len;
      // level 0: x placed in interval j; level m >= 1: TA / XL / XR per j.
      if (idx < n + 1) {
        a.payload = OrdAtom{OrdAtom::XLeft, idx, 0};
        return a;
      }
      Nat r = idx - (n + 1);
      Nat m = r / (3 * (n + 1)) + 1;
      Nat q = r % (3 * (n + 1));
      Nat j = q / 3;
      static constexpr OrdAtom::Kind kinds[] = {OrdAtom::TupleAtLeast, OrdAtom::XLeft,
                                                OrdAtom::XRight};
      a.payload = OrdAtom{kinds[q % 3], j, m};
      return a;
    }
    case ClassTag::BooleanAlgebra: {
      if (tuple_len > kMaxBATupleLen)
        throw PreconditionViolated("boolean-algebra tuple too long");
      Nat cells = Nat(1) << tuple_len;
      Nat m = idx / (3 * cells) + 1;
      Nat q = idx % (3 * cells);
      static constexpr BAAtom::Kind kinds[] = {BAAtom::CellAtLeast, BAAtom::XIn,
                                               BAAtom::XOut};
      a.payload = BAAtom{kinds[q % 3], q / 3, m};
      return a;
    }
    case ClassTag::Tree: {
      // refs (var, up-steps) in var-major order
      std::vector<std::pair<Nat, Nat>> refs;
      for (Nat i = 0; i < tuple_len; ++i)
        for (Nat k = 0; k <= kMaxUpSteps; ++k) refs.push_back({i, k});
      Nat pos = idx;
      for (Nat level = 1;; ++level) {
        if (level == 1 && pos < refs.size()) {
          a.payload = TreeAtom{TreeAtom::XChildOf, refs[pos].first, refs[pos].second, {}};
          return a;
        }
        if (level == 1) pos -= refs.size();
        auto pats = patterns_of_size(level);
        Nat block = pats.size() * (1 + refs.size());
        if (pos < block) {
          Nat per = 1 + refs.size();
          const PlainTree& p = pats[pos / per];
          Nat slot = pos % per;
          if (slot == 0) {
            a.payload = TreeAtom{TreeAtom::XEmbed, 0, 0, p};
          } else {
            const auto& r = refs[slot - 1];
            a.payload = TreeAtom{TreeAtom::NodeEmbed, r.first, r.second, p};
          }
          return a;
        }
        pos -= block;
        if (level > 64) throw DecodeError("tree atom index out of range");
      }
    }
    default:
      throw UnsupportedFormula("no atom enumeration for this class");
  }
}

bool type_satisfies(const B1TypeCode& t, const ClassAtom& atom) {
  if (atom.tag != t.tag) throw UnsupportedFormula("atom/type class mismatch");
  if (atom.mentions_x())
    throw UnsupportedFormula("extension atom evaluated on a pure tuple type");
  switch (t.tag) {
    case ClassTag::LinearOrder: {
      const auto& a = atom.ord();
      const auto& sizes = t.ord().sizes;
      if (a.interval >= sizes.size()) throw UnsupportedFormula("interval out of range");
      return sizes[a.interval].at_least(a.count);
    }
    case ClassTag::BooleanAlgebra: {
      const auto& a = atom.ba();
      const auto& c = t.ba();
      if (a.cell_mask >= (Nat(1) << c.tuple_len))
        throw UnsupportedFormula("cell mask out of range");
      auto it = c.cells.find(a.cell_mask);
      if (it == c.cells.end()) return false;
      return it->second.at_least(a.count);
    }
    case ClassTag::Tree: {
      const auto& a = atom.tree();
      const auto& c = t.tree();
      Nat v = c.node_of_var(a.var);
      for (Nat k = 0; k < a.up_steps; ++k) v = c.parent[v];
      if (c.labels[v].infinite) return true;
      return tree_embeds(a.pattern, c.labels[v].finite_tree);
    }
    default:
      throw UnsupportedFormula("no satisfaction relation for this class");
  }
}

bool extended_satisfies_order(const OrderTypeCode& ext, Nat x_rank, const OrdAtom& a) {
  const auto& S = ext.sizes;
  if (x_rank + 1 >= S.size()) throw PreconditionViolated("x rank out of range");
  switch (a.kind) {
    case OrdAtom::TupleAtLeast: {
      if (a.interval < x_rank) return S[a.interval].at_least(a.count);
      if (a.interval > x_rank) return S[a.interval + 1].at_least(a.count);
      return sg_sum(S[x_rank], S[x_rank + 1], 1).at_least(a.count);
    }
    case OrdAtom::XLeft:
      return x_rank == a.interval && S[x_rank].at_least(a.count);
    case OrdAtom::XRight:
      return x_rank == a.interval && S[x_rank + 1].at_least(a.count);
  }
  throw UnsupportedFormula("bad order atom");
}

bool extended_satisfies_ba(const BATypeCode& ext, Nat x_var, const BAAtom& a) {
  if (x_var >= ext.tuple_len) throw PreconditionViolated("x variable out of range");
  // spread a base mask over the extended positions, skipping x_var
  auto spread = [&](Nat base_mask) {
    Nat m = 0;
    Nat out_bit = 0;
    for (Nat bit = 0; bit < ext.tuple_len; ++bit) {
      if (bit == x_var) continue;
      if ((base_mask >> out_bit) & 1) m |= Nat(1) << bit;
      ++out_bit;
    }
    return m;
  };
  if (a.cell_mask >= (Nat(1) << (ext.tuple_len - 1)))
    throw UnsupportedFormula("cell mask out of range");
  Nat in_mask = spread(a.cell_mask) | (Nat(1) << x_var);
  Nat out_mask = spread(a.cell_mask);
  auto cell = [&](Nat mask) {
    auto it = ext.cells.find(mask);
    return it == ext.cells.end() ? SizeGuess::finite(0) : it->second;
  };
  switch (a.kind) {
    case BAAtom::CellAtLeast:
      return sg_sum(cell(in_mask), cell(out_mask), 0).at_least(a.count);
    case BAAtom::XIn:
      return ext.cells.count(in_mask) && cell(in_mask).at_least(a.count);
    case BAAtom::XOut:
      return ext.cells.count(out_mask) && cell(out_mask).at_least(a.count);
  }
  throw UnsupportedFormula("bad boolean-algebra atom");
}

bool extended_satisfies_tree(const TreeTypeCode& ext, Nat x_node, const TreeAtom& a) {
  if (x_node >= ext.parent.size()) throw PreconditionViolated("x node out of range");
  auto ref_node = [&](Nat var, Nat up) {
    Nat v = ext.node_of_var(var);
    for (Nat k = 0; k < up; ++k) v = ext.parent[v];
    return v;
  };
  switch (a.kind) {
    case TreeAtom::NodeEmbed: {
      Nat v = ref_node(a.var, a.up_steps);
      if (ext.labels[v].infinite) return true;
      return tree_embeds(a.pattern, ext.labels[v].finite_tree);
    }
    case TreeAtom::XChildOf: {
      Nat v = ref_node(a.var, a.up_steps);
      return x_node != 0 && x_node != v && ext.parent[x_node] == v;
    }
    case TreeAtom::XEmbed:
      if (ext.labels[x_node].infinite) return true;
      return tree_embeds(a.pattern, ext.labels[x_node].finite_tree);
  }
  throw UnsupportedFormula("bad tree atom");
}

bool extended_satisfies(const B1TypeCode& ext, Nat x_pos, const ClassAtom& atom) {
  if (atom.tag != ext.tag) throw UnsupportedFormula("atom/type class mismatch");
  switch (ext.tag) {
    case ClassTag::LinearOrder:
      return extended_satisfies_order(ext.ord(), x_pos, atom.ord());
    case ClassTag::BooleanAlgebra:
      return extended_satisfies_ba(ext.ba(), x_pos, atom.ba());
    case ClassTag::Tree:
      return extended_satisfies_tree(ext.tree(), x_pos, atom.tree());
    default:
      throw UnsupportedFormula("no satisfaction relation for this class");
  }
}

bool type_membership(const TypeEnumeration& R, const Index& i, const ClassAtom& phi) {
  if (phi.mentions_x())
    throw UnsupportedFormula("membership takes pure tuple formulas");
  return type_satisfies(decode_type(R.tag, i), phi);
}

B1TypeCode observe_tuple_type(const Presentation& p, const std::vector<Nat>& tuple, Nat s) {
  check_tuple(tuple);
  switch (p.tag()) {
    case ClassTag::LinearOrder: {
      const auto& fx = p.order();
      for (Nat e : tuple)
        if (!fx.enumerated(e, s)) throw UnknownElement("tuple element not enumerated");
      std::vector<Nat> sorted = tuple;
      std::sort(sorted.begin(), sorted.end(),
                [&](Nat a, Nat b) { return fx.less(a, b); });
      std::vector<SizeGuess> sizes;
      if (sorted.empty()) {
        if (!fx.bound) {
          sizes.push_back(SizeGuess::infinite());
        } else {
          Nat n = fx.count_at(s);
          sizes.push_back(n > *fx.bound ? SizeGuess::infinite() : SizeGuess::finite(n));
        }
      } else {
        sizes.push_back(outer_size_guess(fx, sorted.front(), true, s));
        for (Nat i = 0; i + 1 < sorted.size(); ++i)
          sizes.push_back(interval_label_guess(fx, sorted[i], sorted[i + 1], s));
        sizes.push_back(outer_size_guess(fx, sorted.back(), false, s));
      }
      return make_order_type(std::move(sizes));
    }
    case ClassTag::BooleanAlgebra: {
      const auto& fx = p.ba();
      if (tuple.size() > kMaxBATupleLen)
        throw PreconditionViolated("boolean-algebra tuple too long");
      for (Nat e : tuple)
        if (!fx.enumerated(e, s)) throw UnknownElement("tuple element not enumerated");
      std::map<Nat, SizeGuess> cells;
      for (Nat mask = 0; mask < (Nat(1) << tuple.size()); ++mask) {
        BATerm cell = ba_cell_term(fx, tuple, mask);
        if (!cell.is_zero()) cells[mask] = ba_term_size_guess(fx, cell, s);
      }
      return make_ba_type(tuple.size(), std::move(cells));
    }
    case ClassTag::Tree: {
      const auto& fx = p.tree_fx();
      for (Nat e : tuple)
        if (!fx.enumerated(e, s)) throw UnknownElement("tuple element not enumerated");
      auto code = tree_code_from(
          fx, tuple, [&](Nat v) { return fx.finite_revealed(v, s); },
          [&](Nat v) { return fx.subtree_at(v, s); });
      return make_tree_type(std::move(code));
    }
    default:
      throw UnsupportedFormula("no tuple typing for this class");
  }
}

Index label_tuple(const Presentation& p, const std::vector<Nat>& tuple, Nat s) {
  return encode_type(observe_tuple_type(p, tuple, s));
}

B1TypeCode true_tuple_type(const Presentation& p, const std::vector<Nat>& tuple) {
  check_tuple(tuple);
  switch (p.tag()) {
    case ClassTag::LinearOrder: {
      const auto& fx = p.order();
      std::vector<Nat> sorted = tuple;
      std::sort(sorted.begin(), sorted.end(),
                [&](Nat a, Nat b) { return fx.less(a, b); });
      std::vector<SizeGuess> sizes;
      sizes.push_back(SizeGuess::infinite());
      for (Nat i = 0; i + 1 < sorted.size(); ++i)
        sizes.push_back(fx.true_interval(sorted[i], sorted[i + 1]));
      if (!sorted.empty()) sizes.push_back(SizeGuess::infinite());
      return make_order_type(std::move(sizes));
    }
    case ClassTag::BooleanAlgebra: {
      const auto& fx = p.ba();
      std::map<Nat, SizeGuess> cells;
      for (Nat mask = 0; mask < (Nat(1) << tuple.size()); ++mask) {
        BATerm cell = ba_cell_term(fx, tuple, mask);
        if (!cell.is_zero()) cells[mask] = cell.size();
      }
      return make_ba_type(tuple.size(), std::move(cells));
    }
    case ClassTag::Tree: {
      const auto& fx = p.tree_fx();
      auto code = tree_code_from(
          fx, tuple, [&](Nat v) { return fx.truly_finite(v); },
          [&](Nat v) { return fx.true_subtree(v); });
      return make_tree_type(std::move(code));
    }
    default:
      throw UnsupportedFormula("no tuple typing for this class");
  }
}

}  // namespace limitcopy
