#include "limitcopy/presentation.hpp"

namespace limitcopy {

std::string class_tag_name(ClassTag tag) {
  switch (tag) {
    case ClassTag::LinearOrder: return "linear-order";
    case ClassTag::BooleanAlgebra: return "boolean-algebra";
    case ClassTag::Tree: return "tree";
    case ClassTag::EquivalenceStructure: return "equivalence";
  }
  return "?";
}

Presentation Presentation::linear_order(std::shared_ptr<const OrderFixture> fx) {
  Presentation p;
  p.tag_ = ClassTag::LinearOrder;
  p.ord_ = std::move(fx);
  return p;
}
Presentation Presentation::boolean_algebra(std::shared_ptr<const BAFixture> fx) {
  Presentation p;
  p.tag_ = ClassTag::BooleanAlgebra;
  p.ba_ = std::move(fx);
  return p;
}
Presentation Presentation::tree(std::shared_ptr<const TreeFixture> fx) {
  Presentation p;
  p.tag_ = ClassTag::Tree;
  p.tree_ = std::move(fx);
  return p;
}
Presentation Presentation::equivalence(std::shared_ptr<const EquivStructure> fx) {
  Presentation p;
  p.tag_ = ClassTag::EquivalenceStructure;
  p.eq_ = std::move(fx);
  return p;
}

const OrderFixture& Presentation::order() const {
  if (!ord_) throw std::logic_error("not a linear-order presentation");
  return *ord_;
}
const BAFixture& Presentation::ba() const {
  if (!ba_) throw std::logic_error("not a boolean-algebra presentation");
  return *ba_;
}
const TreeFixture& Presentation::tree_fx() const {
  if (!tree_) throw std::logic_error("not a tree presentation");
  return *tree_;
}
const EquivStructure& Presentation::equiv() const {
  if (!eq_) throw std::logic_error("not an equivalence presentation");
  return *eq_;
}

Nat Presentation::universe_count(Nat s) const {
  switch (tag_) {
    case ClassTag::LinearOrder: return ord_->count_at(s);
    case ClassTag::BooleanAlgebra: return ba_->count_at(s);
    case ClassTag::Tree: return tree_->count_at(s);
    case ClassTag::EquivalenceStructure:
      // emitted copies enumerate one element per stage
      return std::min<Nat>(s + 1, eq_->class_of.size());
  }
  return 0;
}

std::set<Fact> Presentation::facts_at(Nat s) const {
  std::set<Fact> facts;
  Nat n = universe_count(s);
  switch (tag_) {
    case ClassTag::LinearOrder:
      for (Nat a = 0; a < n; ++a)
        for (Nat b = 0; b < n; ++b)
          if (a != b && ord_->less(a, b)) facts.insert({"<", a, b});
      break;
    case ClassTag::BooleanAlgebra:
      for (Nat a = 0; a < n; ++a)
        for (Nat b = 0; b < n; ++b)
          if (ba_->elems[a].leq(ba_->elems[b])) facts.insert({"le", a, b});
      break;
    case ClassTag::Tree:
      for (Nat a = 0; a < n; ++a) facts.insert({"pred", a, tree_->nodes[a].parent});
      break;
    case ClassTag::EquivalenceStructure:
      for (Nat a = 0; a < n; ++a)
        for (Nat b = 0; b < n; ++b)
          if (eq_->class_of[a] == eq_->class_of[b]) facts.insert({"~", a, b});
      break;
  }
  return facts;
}

DiagramFragment diagram_fragment(const Presentation& p, Nat s) {
  DiagramFragment frag;
  Nat n = p.universe_count(s);
  for (Nat e = 0; e < n; ++e) frag.prefix.push_back(e);
  frag.facts = p.facts_at(s);
  return frag;
}

}  // namespace limitcopy
