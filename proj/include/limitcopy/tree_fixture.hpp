#ifndef LIMITCOPY_TREE_FIXTURE_HPP
#define LIMITCOPY_TREE_FIXTURE_HPP

#include <vector>

#include "limitcopy/common.hpp"

namespace limitcopy {

// Plain rooted tree with ordered children, used both for concrete finite
// subtrees and for embedding patterns.
struct PlainTree {
  std::vector<PlainTree> children;

  Nat node_count() const;
  // Canonical form: children sorted by serialization, recursively.
  void canonicalize();
  std::string serialize() const;  // e.g. "(()())"
  friend bool operator==(const PlainTree& a, const PlainTree& b) {
    return a.children == b.children;
  }
  friend bool operator<(const PlainTree& a, const PlainTree& b);
};

// Does `pattern` embed below a node whose concrete subtree is `host`?
// The pattern root maps to the host root; pattern children map to distinct
// host children, recursively.
bool tree_embeds(const PlainTree& pattern, const PlainTree& host);

// Tree fixture: trees grow downward, the root is its own predecessor.  The
// enumeration lists the root first and every node after its predecessor.
// Infinite nodes stand for nodes with infinitely many infinite successors;
// finite nodes have their whole subtree enumerated by their reveal stage.
struct TreeFixture {
  struct Node {
    Nat parent = 0;
    bool infinite = true;
    Nat arrival = 0;
    Nat reveal = 0;  // for finite nodes: stage their subtree is known complete
  };
  std::vector<Node> nodes;

  void validate() const;
  Nat count_at(Nat s) const;
  bool enumerated(Nat v, Nat s) const { return nodes.at(v).arrival <= s; }
  std::vector<Nat> children_of(Nat v) const;
  std::vector<Nat> children_at(Nat v, Nat s) const;
  bool below(Nat v, Nat anc) const;  // v in subtree of anc (incl. v == anc)

  // Concrete subtree below v restricted to nodes enumerated by stage s.
  PlainTree subtree_at(Nat v, Nat s) const;
  PlainTree true_subtree(Nat v) const;

  // True finiteness verdict for v's subtree.
  bool truly_finite(Nat v) const { return !nodes.at(v).infinite; }
  // Stage-s guess: finite once revealed, infinite before.
  bool finite_revealed(Nat v, Nat s) const;
};

}  // namespace limitcopy

#endif
