#include "limitcopy/theory_tree.hpp"

#include <algorithm>

namespace limitcopy {

std::vector<bool> TheoryTypeTree::path_of(Nat tuple_idx, Nat node) const {
  const auto& tt = tuples.at(tuple_idx);
  std::vector<bool> signs;
  Nat v = node;
  while (tt.nodes.at(v).parent) {
    signs.push_back(tt.nodes[v].sign);
    v = *tt.nodes[v].parent;
  }
  std::reverse(signs.begin(), signs.end());
  return signs;
}

std::vector<Nat> TheoryTypeTree::live_indices(Nat tuple_idx) const {
  std::vector<Nat> out;
  const auto& tt = tuples.at(tuple_idx);
  for (Nat v : tt.terminals)
    if (tt.nodes[v].index) out.push_back(*tt.nodes[v].index);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void extend_once(TheoryTypeTree& T, Nat tuple_idx, const ConsistencyPred& consistency) {
  auto& tt = T.tuples[tuple_idx];
  std::vector<Nat> next_terminals;
  for (Nat v : tt.terminals) {
    auto base = T.path_of(tuple_idx, v);
    Nat formula = base.size();
    std::vector<bool> ok_signs;
    for (bool sign : {false, true}) {
      auto ext = base;
      ext.push_back(sign);
      if (consistency(tuple_idx, ext)) ok_signs.push_back(sign);
    }
    if (ok_signs.empty())
      throw PredicateViolation("terminal node has no consistent extension");
    bool first = true;
    for (bool sign : ok_signs) {
      TheoryTypeTree::Node child;
      child.parent = v;
      child.sign = sign;
      child.depth = tt.nodes[v].depth + 1;
      Nat w = tt.nodes.size();
      if (first) {
        // the first consistent extension inherits the index
        child.index = tt.nodes[v].index;
        tt.nodes[v].index.reset();
      } else {
        child.index = T.next_index++;
      }
      tt.nodes.push_back(child);
      next_terminals.push_back(w);
      if (child.index) {
        Nat idx = *child.index;
        T.index_at[idx] = {tuple_idx, w};
        if (first) {
          T.r_sets[idx].push_back({formula, sign});
        } else {
          auto& rs = T.r_sets[idx];
          auto full = base;
          full.push_back(sign);
          for (Nat f = 0; f < full.size(); ++f) rs.push_back({f, full[f]});
        }
      }
      first = false;
    }
  }
  tt.terminals = std::move(next_terminals);
}

}  // namespace

TheoryTypeTree theory_tree_step(TheoryTypeTree T, const ConsistencyPred& consistency, Nat s) {
  if (s != T.stages_done)
    throw PreconditionViolated("theory_tree_step: stages must be applied in order");
  Nat target_depth = s + 1;
  for (Nat t = 0; t <= s; ++t) {
    if (t >= T.tuples.size()) {
      TheoryTypeTree::TupleTree tt;
      TheoryTypeTree::Node root;
      root.index = T.next_index++;
      tt.nodes.push_back(root);
      tt.terminals.push_back(0);
      T.index_at[*tt.nodes[0].index] = {t, 0};
      T.r_sets[*tt.nodes[0].index];
      T.tuples.push_back(std::move(tt));
    }
    auto& tt = T.tuples[t];
    while (tt.nodes[tt.terminals.front()].depth < target_depth)
      extend_once(T, t, consistency);
  }
  T.stages_done = s + 1;
  return T;
}

Nat count_consistent_paths(const ConsistencyPred& consistency, Nat tuple_idx, Nat depth) {
  Nat count = 0;
  std::vector<std::vector<bool>> frontier{{}};
  for (Nat d = 0; d < depth; ++d) {
    std::vector<std::vector<bool>> next;
    for (const auto& p : frontier)
      for (bool sign : {false, true}) {
        auto e = p;
        e.push_back(sign);
        if (consistency(tuple_idx, e)) next.push_back(std::move(e));
      }
    frontier = std::move(next);
  }
  count = frontier.size();
  return count;
}

}  // namespace limitcopy
