#ifndef LIMITCOPY_BTYPES_HPP
#define LIMITCOPY_BTYPES_HPP

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "limitcopy/common.hpp"
#include "limitcopy/presentation.hpp"
#include "limitcopy/size_guess.hpp"
#include "limitcopy/tree_fixture.hpp"

namespace limitcopy {

// ---------------------------------------------------------------------------
// Type codes.
//
// A B1-type is coded by the finite invariant that determines it in each
// class: interval sizes for linear orders, cell sizes of the generated
// subalgebra for Boolean algebras, and the generated labeled subtree for
// trees.
// ---------------------------------------------------------------------------

// Tuple listed in increasing order; sizes[0] is the interval left of the
// first element, sizes[n] the interval right of the last.  An empty-tuple
// type has a single size (the whole order).
struct OrderTypeCode {
  std::vector<SizeGuess> sizes;  // length = tuple length + 1, >= 1

  Nat tuple_len() const { return sizes.size() - 1; }
  friend bool operator==(const OrderTypeCode&, const OrderTypeCode&) = default;
};

// Cells are the nonzero full meets of tuple elements and complements; the
// mask bit i says whether the cell lies below u_i.  Absent masks denote empty
// cells.
struct BATypeCode {
  Nat tuple_len = 0;
  std::map<Nat, SizeGuess> cells;

  friend bool operator==(const BATypeCode&, const BATypeCode&) = default;
};

// Generated subtree with nodes in preorder (node 0 = root, parent[v] < v for
// v > 0).  mark[v] = 0 for a plain node, p+1 when the node is tuple element
// u_p.  A node is labeled infinite or carries its concrete finite subtree.
struct TreeTypeCode {
  struct Label {
    bool infinite = true;
    PlainTree finite_tree;
    friend bool operator==(const Label&, const Label&) = default;
  };
  std::vector<Nat> parent;
  std::vector<Label> labels;
  std::vector<Nat> marks;

  Nat tuple_len() const;
  // Node carrying tuple element p, by mark; throws if absent.
  Nat node_of_var(Nat p) const;
  friend bool operator==(const TreeTypeCode&, const TreeTypeCode&) = default;
};

struct B1TypeCode {
  ClassTag tag = ClassTag::LinearOrder;
  std::variant<OrderTypeCode, BATypeCode, TreeTypeCode> payload;

  const OrderTypeCode& ord() const { return std::get<OrderTypeCode>(payload); }
  const BATypeCode& ba() const { return std::get<BATypeCode>(payload); }
  const TreeTypeCode& tree() const { return std::get<TreeTypeCode>(payload); }
  friend bool operator==(const B1TypeCode&, const B1TypeCode&) = default;
};

B1TypeCode make_order_type(std::vector<SizeGuess> sizes);
B1TypeCode make_ba_type(Nat tuple_len, std::map<Nat, SizeGuess> cells);
B1TypeCode make_tree_type(TreeTypeCode code);

// ---------------------------------------------------------------------------
// The computable enumeration R: a fixed bijective-style pairing between codes
// and indices, per class.  Every code has exactly one index; decode rejects
// the (sparse) malformed indices with DecodeError.
// ---------------------------------------------------------------------------

Index encode_type(const B1TypeCode& t);
B1TypeCode decode_type(ClassTag tag, const Index& i);
bool valid_index(ClassTag tag, const Index& i);
// First `count` indices that decode cleanly, in increasing order.
std::vector<Index> enumerate_valid_indices(ClassTag tag, Nat count);

// ---------------------------------------------------------------------------
// Formulas.
//
// The formula language is the class-relevant existential fragment: interval
// counting for orders, cell counting for Boolean algebras, subtree patterns
// for trees.  Atoms may mention a distinguished extension variable x beyond
// the base tuple; a literal is an atom or its negation.
// ---------------------------------------------------------------------------

struct OrdAtom {
  enum Kind { TupleAtLeast, XLeft, XRight } kind = TupleAtLeast;
  Nat interval = 0;  // base-tuple interval index, 0..n
  Nat count = 0;
  friend bool operator==(const OrdAtom&, const OrdAtom&) = default;
};

struct BAAtom {
  enum Kind { CellAtLeast, XIn, XOut } kind = CellAtLeast;
  Nat cell_mask = 0;  // over base tuple
  Nat count = 1;
  friend bool operator==(const BAAtom&, const BAAtom&) = default;
};

struct TreeAtom {
  enum Kind { NodeEmbed, XChildOf, XEmbed } kind = NodeEmbed;
  Nat var = 0;       // base variable index (NodeEmbed / XChildOf)
  Nat up_steps = 0;  // node referenced as pred^k(u_var)
  PlainTree pattern; // NodeEmbed / XEmbed
  friend bool operator==(const TreeAtom&, const TreeAtom&) = default;
};

struct ClassAtom {
  ClassTag tag = ClassTag::LinearOrder;
  std::variant<OrdAtom, BAAtom, TreeAtom> payload;

  const OrdAtom& ord() const { return std::get<OrdAtom>(payload); }
  const BAAtom& ba() const { return std::get<BAAtom>(payload); }
  const TreeAtom& tree() const { return std::get<TreeAtom>(payload); }
  bool mentions_x() const;
  friend bool operator==(const ClassAtom&, const ClassAtom&) = default;
};

struct Literal {
  ClassAtom atom;
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
};

// Canonical enumeration of atoms over (u_0..u_{n-1}, x), fixed per class and
// tuple length; index order is the Goedel-number order the completion
// procedure walks.
ClassAtom atom_at(ClassTag tag, Nat tuple_len, Nat idx);

// Canonical ordered patterns with exactly n nodes, sorted.
std::vector<PlainTree> patterns_of_size(Nat n);

// Truth value of a pure-tuple atom (no x) in the type coded by t.
bool type_satisfies(const B1TypeCode& t, const ClassAtom& atom);

// Truth value of an atom possibly mentioning x, in the type of an extended
// tuple where x is identified inside the code:
//   orders: x_rank = position of x in the sorted extended tuple;
//   BAs:    x is the tuple variable x_var of the extended code;
//   trees:  x is the node x_node of the extended code's subtree.
bool extended_satisfies_order(const OrderTypeCode& ext, Nat x_rank, const OrdAtom& a);
bool extended_satisfies_ba(const BATypeCode& ext, Nat x_var, const BAAtom& a);
bool extended_satisfies_tree(const TreeTypeCode& ext, Nat x_node, const TreeAtom& a);
// Dispatcher; x_pos is the class-appropriate identifier above.
bool extended_satisfies(const B1TypeCode& ext, Nat x_pos, const ClassAtom& atom);

// ---------------------------------------------------------------------------
// TypeEnumeration facade: decidable membership R(i, phi) plus code lookups.
// ---------------------------------------------------------------------------

struct TypeEnumeration {
  ClassTag tag;
};

bool type_membership(const TypeEnumeration& R, const Index& i, const ClassAtom& phi);

// ---------------------------------------------------------------------------
// Labeling: stage-s guess at the R-index of the B1-type of a tuple.
// ---------------------------------------------------------------------------

B1TypeCode observe_tuple_type(const Presentation& p, const std::vector<Nat>& tuple, Nat s);
Index label_tuple(const Presentation& p, const std::vector<Nat>& tuple, Nat s);

// Ground-truth B1-type computed from a fixture's total structure (the
// brute-force comparison target for stabilization tests).
B1TypeCode true_tuple_type(const Presentation& p, const std::vector<Nat>& tuple);

}  // namespace limitcopy

#endif
