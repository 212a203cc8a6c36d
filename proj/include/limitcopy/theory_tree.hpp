#ifndef LIMITCOPY_THEORY_TREE_HPP
#define LIMITCOPY_THEORY_TREE_HPP

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "limitcopy/common.hpp"

namespace limitcopy {

// Growing decision trees over +/- formula sequences, one per variable tuple,
// with the index-inheritance discipline: when a node splits, exactly one
// consistent extension keeps the node's index and the rest get fresh ones.
// The accumulated formula set of an index is the sign path of the node it
// currently sits on.
struct TheoryTypeTree {
  struct Node {
    std::optional<Nat> parent;
    bool sign = false;  // decision for the formula at depth parent+1
    Nat depth = 0;
    std::optional<Nat> index;
  };
  struct TupleTree {
    std::vector<Node> nodes;      // node 0 = root
    std::vector<Nat> terminals;   // frontier, all at the current depth
  };

  std::vector<TupleTree> tuples;
  Nat next_index = 0;
  Nat stages_done = 0;  // frontier depth of tuple trees present from stage 0

  // index -> (tuple, node) where it currently sits
  std::map<Nat, std::pair<Nat, Nat>> index_at;
  // R_i: formulas emitted for each index, as (formula position, sign)
  std::map<Nat, std::vector<std::pair<Nat, bool>>> r_sets;

  std::vector<bool> path_of(Nat tuple_idx, Nat node) const;
  std::vector<Nat> live_indices(Nat tuple_idx) const;
};

// consistency(tuple_idx, signs): is the decision sequence signs for formulas
// phi_0..phi_{len-1} of tuple tuple_idx consistent?
using ConsistencyPred = std::function<bool(Nat tuple_idx, const std::vector<bool>& signs)>;

// One construction stage: requires s == T.stages_done.  Extends every
// terminal of the first s+1 tuple trees to depth s+1 (creating the (s+1)st
// tree and catching it up); throws PredicateViolation when a terminal has no
// consistent extension.
TheoryTypeTree theory_tree_step(TheoryTypeTree T, const ConsistencyPred& consistency, Nat s);

// Brute-force count of maximal consistent sign sequences of the given depth.
Nat count_consistent_paths(const ConsistencyPred& consistency, Nat tuple_idx, Nat depth);

}  // namespace limitcopy

#endif
