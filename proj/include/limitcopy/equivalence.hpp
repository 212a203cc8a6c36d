#ifndef LIMITCOPY_EQUIVALENCE_HPP
#define LIMITCOPY_EQUIVALENCE_HPP

#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "limitcopy/common.hpp"

namespace limitcopy {

// Sigma-2-style approximation to the character of an equivalence structure:
// (n, k) is in the true character iff it keeps re-entering the guess set
// cofinally.  On settling fixtures the guess set is eventually constant.
struct CharacterApprox {
  std::function<std::set<std::pair<Nat, Nat>>(Nat stage)> guess;
};

CharacterApprox constant_character(std::set<std::pair<Nat, Nat>> pairs);

// Equivalence structure given by element -> class id.
struct EquivStructure {
  std::vector<Nat> class_of;  // element id -> class id

  Nat count_classes() const;
  Nat class_size(Nat cls, Nat prefix) const;  // size within element prefix
};

// The standard Sigma-2 copy construction for an equivalence structure with
// infinitely many infinite classes.  Pairs currently confirmed by the
// character approximation keep that many classes frozen at that size; classes
// backing an ejected pair are released and grown without bound.  Growers are
// filled in uninterrupted batches so a prefix cut interrupts at most one
// class.
//
// Returns the first `horizon` elements of the emitted copy.
EquivStructure build_equivalence_copy(const CharacterApprox& chr, Nat horizon);

}  // namespace limitcopy

#endif
