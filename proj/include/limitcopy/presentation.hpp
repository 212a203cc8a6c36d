#ifndef LIMITCOPY_PRESENTATION_HPP
#define LIMITCOPY_PRESENTATION_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "limitcopy/ba_fixture.hpp"
#include "limitcopy/common.hpp"
#include "limitcopy/equivalence.hpp"
#include "limitcopy/order_fixture.hpp"
#include "limitcopy/tree_fixture.hpp"

namespace limitcopy {

enum class ClassTag { LinearOrder, BooleanAlgebra, Tree, EquivalenceStructure };

std::string class_tag_name(ClassTag tag);

// Atomic sentence over the enumerated prefix, in a small fixed vocabulary:
//   "<"    a b      (linear orders)
//   "le"   a b      (Boolean algebras)
//   "pred" a b      (trees: pred(a) = b)
//   "~"    a b      (equivalence)
struct Fact {
  std::string rel;
  Nat a = 0, b = 0;
  friend bool operator<(const Fact& x, const Fact& y) {
    if (x.rel != y.rel) return x.rel < y.rel;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
  friend bool operator==(const Fact& x, const Fact& y) {
    return x.rel == y.rel && x.a == y.a && x.b == y.b;
  }
};

// Stage-enumerated presentation of a countable structure: a monotone universe
// prefix plus monotone atomic-diagram fragments, backed by a class fixture.
class Presentation {
 public:
  static Presentation linear_order(std::shared_ptr<const OrderFixture> fx);
  static Presentation boolean_algebra(std::shared_ptr<const BAFixture> fx);
  static Presentation tree(std::shared_ptr<const TreeFixture> fx);
  static Presentation equivalence(std::shared_ptr<const EquivStructure> fx);

  ClassTag tag() const { return tag_; }
  Nat universe_count(Nat s) const;
  std::set<Fact> facts_at(Nat s) const;

  const OrderFixture& order() const;
  const BAFixture& ba() const;
  const TreeFixture& tree_fx() const;
  const EquivStructure& equiv() const;

 private:
  ClassTag tag_ = ClassTag::LinearOrder;
  std::shared_ptr<const OrderFixture> ord_;
  std::shared_ptr<const BAFixture> ba_;
  std::shared_ptr<const TreeFixture> tree_;
  std::shared_ptr<const EquivStructure> eq_;
};

struct DiagramFragment {
  std::vector<Nat> prefix;
  std::set<Fact> facts;
};

DiagramFragment diagram_fragment(const Presentation& p, Nat s);

}  // namespace limitcopy

#endif
