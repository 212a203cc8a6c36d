#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "limitcopy/btypes.hpp"

using namespace limitcopy;

namespace {
SizeGuess inf() { return SizeGuess::infinite(); }
SizeGuess fin(Nat n) { return SizeGuess::finite(n); }
}  // namespace

TEST_CASE("order type codes round-trip") {
  auto t1 = make_order_type({inf(), inf()});
  CHECK(decode_type(ClassTag::LinearOrder, encode_type(t1)) == t1);
  auto t2 = make_order_type({fin(0), fin(3), inf()});
  CHECK(decode_type(ClassTag::LinearOrder, encode_type(t2)) == t2);
}

TEST_CASE("every natural is a valid order type index") {
  for (Index i = 0; i < 200; ++i) {
    auto t = decode_type(ClassTag::LinearOrder, i);
    CHECK(encode_type(t) == i);
  }
}

TEST_CASE("first 50 valid indices re-encode to themselves in each class") {
  for (ClassTag tag :
       {ClassTag::LinearOrder, ClassTag::BooleanAlgebra, ClassTag::Tree}) {
    auto idxs = enumerate_valid_indices(tag, 50);
    REQUIRE(idxs.size() == 50);
    for (const auto& i : idxs) CHECK(encode_type(decode_type(tag, i)) == i);
  }
}

TEST_CASE("ba type codes round-trip") {
  auto t = make_ba_type(1, {{0, inf()}, {1, fin(2)}});
  CHECK(decode_type(ClassTag::BooleanAlgebra, encode_type(t)) == t);
  auto empty = make_ba_type(0, {});
  CHECK(decode_type(ClassTag::BooleanAlgebra, encode_type(empty)) == empty);
}

TEST_CASE("tree type codes round-trip") {
  TreeTypeCode c;
  // root (infinite), one child holding u_0 with finite label "single node"
  c.parent = {0, 0};
  c.labels.resize(2);
  c.labels[1].infinite = false;
  c.marks = {0, 1};
  auto t = make_tree_type(c);
  CHECK(decode_type(ClassTag::Tree, encode_type(t)) == t);
  CHECK(t.tree().tuple_len() == 1);
  CHECK(t.tree().node_of_var(0) == 1);
}

TEST_CASE("tree code validation rejects bad marks and labels") {
  TreeTypeCode c;
  c.parent = {0, 0};
  c.labels.resize(2);
  c.marks = {2, 2};
  CHECK_THROWS_AS(make_tree_type(c), DecodeError);
  TreeTypeCode d;
  d.parent = {0, 0};
  d.labels.resize(2);
  d.labels[0].infinite = false;  // finite root above infinite child
  d.marks = {0, 0};
  CHECK_THROWS_AS(make_tree_type(d), DecodeError);
}

TEST_CASE("order membership: interval arithmetic") {
  TypeEnumeration R{ClassTag::LinearOrder};
  // type [inf, inf] of a single element: something to its right
  ClassAtom right;
  right.tag = ClassTag::LinearOrder;
  right.payload = OrdAtom{OrdAtom::TupleAtLeast, 1, 1};
  CHECK(type_membership(R, encode_type(make_order_type({inf(), inf()})), right));
  // type [0,2,inf]: no three elements strictly between u_0 and u_1
  ClassAtom three;
  three.tag = ClassTag::LinearOrder;
  three.payload = OrdAtom{OrdAtom::TupleAtLeast, 1, 3};
  CHECK_FALSE(
      type_membership(R, encode_type(make_order_type({fin(0), fin(2), inf()})), three));
}

TEST_CASE("ba membership: infinite elements are non-atoms") {
  TypeEnumeration R{ClassTag::BooleanAlgebra};
  auto t = make_ba_type(1, {{0, inf()}, {1, inf()}});
  ClassAtom two_below;
  two_below.tag = ClassTag::BooleanAlgebra;
  two_below.payload = BAAtom{BAAtom::CellAtLeast, 1, 2};
  CHECK(type_membership(R, encode_type(t), two_below));
}

TEST_CASE("tree membership: pattern embedding below labeled nodes") {
  TreeTypeCode c;
  c.parent = {0};
  c.labels.resize(1);
  c.labels[0].infinite = false;
  c.labels[0].finite_tree.children.resize(2);  // root with two leaves
  c.marks = {1};
  auto t = make_tree_type(c);
  ClassAtom a;
  a.tag = ClassTag::Tree;
  PlainTree two_kids;
  two_kids.children.resize(2);
  a.payload = TreeAtom{TreeAtom::NodeEmbed, 0, 0, two_kids};
  CHECK(type_satisfies(t, a));
  PlainTree three_kids;
  three_kids.children.resize(3);
  a.payload = TreeAtom{TreeAtom::NodeEmbed, 0, 0, three_kids};
  CHECK_FALSE(type_satisfies(t, a));
  // infinite nodes embed everything
  c.labels[0] = {};
  a.payload = TreeAtom{TreeAtom::NodeEmbed, 0, 0, three_kids};
  CHECK(type_satisfies(make_tree_type(c), a));
}

TEST_CASE("membership rejects extension atoms") {
  TypeEnumeration R{ClassTag::LinearOrder};
  ClassAtom a;
  a.tag = ClassTag::LinearOrder;
  a.payload = OrdAtom{OrdAtom::XLeft, 0, 1};
  CHECK_THROWS_AS(type_membership(R, Index(0), a), UnsupportedFormula);
}

TEST_CASE("atom enumeration is stable and class-shaped") {
  // orders, tuple length 1: level 0 has 2 placement atoms
  auto a0 = atom_at(ClassTag::LinearOrder, 1, 0);
  CHECK(a0.ord().kind == OrdAtom::XLeft);
  CHECK(a0.ord().count == 0);
  auto a2 = atom_at(ClassTag::LinearOrder, 1, 2);
  CHECK(a2.ord().kind == OrdAtom::TupleAtLeast);
  CHECK(a2.ord().count == 1);
  // BA tuple length 1: first atom is cell-0 counting
  auto b0 = atom_at(ClassTag::BooleanAlgebra, 1, 0);
  CHECK(b0.ba().kind == BAAtom::CellAtLeast);
  CHECK(b0.ba().count == 1);
  // tree with no tuple vars: only x-pattern atoms
  auto t0 = atom_at(ClassTag::Tree, 0, 0);
  CHECK(t0.tree().kind == TreeAtom::XEmbed);
  CHECK(t0.tree().pattern.node_count() == 1);
}

TEST_CASE("unordered pattern counts match the known sequence") {
  // rooted unordered trees with n nodes: 1, 1, 2, 4, 9, 20
  CHECK(patterns_of_size(1).size() == 1);
  CHECK(patterns_of_size(2).size() == 1);
  CHECK(patterns_of_size(3).size() == 2);
  CHECK(patterns_of_size(4).size() == 4);
  CHECK(patterns_of_size(5).size() == 9);
  CHECK(patterns_of_size(6).size() == 20);
}

TEST_CASE("extended order satisfaction splits intervals at x") {
  // extended tuple (u, x) with u < x: sizes [inf, 3, inf]
  OrderTypeCode ext{{inf(), fin(3), inf()}};
  // base interval right of u contains x: 3 + 1 + inf elements
  CHECK(extended_satisfies_order(ext, 1, OrdAtom{OrdAtom::TupleAtLeast, 1, 100}));
  CHECK(extended_satisfies_order(ext, 1, OrdAtom{OrdAtom::XLeft, 1, 3}));
  CHECK_FALSE(extended_satisfies_order(ext, 1, OrdAtom{OrdAtom::XLeft, 1, 4}));
  CHECK(extended_satisfies_order(ext, 1, OrdAtom{OrdAtom::XRight, 1, 50}));
  CHECK_FALSE(extended_satisfies_order(ext, 1, OrdAtom{OrdAtom::XLeft, 0, 0}));
}

TEST_CASE("extended ba satisfaction merges the two refined cells") {
  // extended (u, x): cells u&x size 2, u&~x inf, ~u&~x inf
  BATypeCode ext;
  ext.tuple_len = 2;
  ext.cells = {{3, fin(2)}, {1, inf()}, {0, inf()}};
  // base cell "below u" = (u&x) + (u&~x): infinite
  CHECK(extended_satisfies_ba(ext, 1, BAAtom{BAAtom::CellAtLeast, 1, 1000}));
  CHECK(extended_satisfies_ba(ext, 1, BAAtom{BAAtom::XIn, 1, 2}));
  CHECK_FALSE(extended_satisfies_ba(ext, 1, BAAtom{BAAtom::XIn, 1, 3}));
  CHECK(extended_satisfies_ba(ext, 1, BAAtom{BAAtom::XOut, 0, 5}));
  CHECK_FALSE(extended_satisfies_ba(ext, 1, BAAtom{BAAtom::XIn, 0, 1}));
}
