#ifndef LIMITCOPY_BA_FIXTURE_HPP
#define LIMITCOPY_BA_FIXTURE_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "limitcopy/common.hpp"
#include "limitcopy/size_guess.hpp"

namespace limitcopy {

// Element of the desk-scale Boolean algebra: a finite union of named atoms
// and dyadic pieces of atomless regions.  A region piece is addressed by a
// binary path ("" = whole region, "0"/"1" its halves, and so on); regions
// split forever, so any element with a region piece has infinite size.
struct BATerm {
  std::uint64_t atoms = 0;                         // bitmask, up to 64 atoms
  std::vector<std::set<std::string>> region_parts; // per region, normalized

  static BATerm zero(Nat num_regions);
  static BATerm one(Nat num_atoms, Nat num_regions);
  static BATerm atom(Nat i, Nat num_regions);
  static BATerm region_piece(Nat region, const std::string& path, Nat num_regions);

  void normalize();
  bool is_zero() const;
  bool has_region_part() const;
  Nat atom_count() const;
  SizeGuess size() const;  // #atoms, or infinite if any region piece

  friend BATerm meet(const BATerm& a, const BATerm& b);
  friend BATerm join(const BATerm& a, const BATerm& b);
  BATerm complement_in(const BATerm& universe) const;  // universe \ this
  bool leq(const BATerm& b) const;
  bool disjoint_with(const BATerm& b) const;
  friend bool operator==(const BATerm& a, const BATerm& b);
  friend bool operator!=(const BATerm& a, const BATerm& b) { return !(a == b); }
  friend bool operator<(const BATerm& a, const BATerm& b);

  std::string str() const;
};

// Boolean-algebra fixture: ground-truth terms plus an enumeration schedule.
// The true algebra is (finitely many atoms) + (finitely many atomless
// regions); fixtures for the no-1-atom class give every infinite element a
// region part.
struct BAFixture {
  Nat num_atoms = 0;
  Nat num_regions = 0;
  std::vector<BATerm> elems;  // element id -> value; 0 and 1 must appear
  std::vector<Nat> arrival;   // nondecreasing in id
  // Stage at which an element's endless splitting (its region part) becomes
  // known to the guessing apparatus; empty vector = known from arrival.
  std::vector<Nat> split_reveal;

  void validate() const;
  Nat reveal_of(Nat e) const { return e < split_reveal.size() ? split_reveal[e] : 0; }
  // Is a witnessed endlessly-splitting part inside `term` at stage s?
  bool region_revealed_in(const BATerm& term, Nat s) const;
  Nat count_at(Nat s) const;
  bool enumerated(Nat e, Nat s) const { return arrival.at(e) <= s; }
  BATerm one() const { return BATerm::one(num_atoms, num_regions); }
  SizeGuess true_size(Nat e) const { return elems.at(e).size(); }
};

enum class AtomGuess { Atom, NonAtom };

// NonAtom once a witness 0 < b < a has been enumerated; Atom otherwise.
AtomGuess ba_atom_guess(const BAFixture& fx, Nat a, Nat s);

// n when a is currently seen as the join of n pairwise-disjoint current atom
// guesses, infinite otherwise.
SizeGuess ba_element_size(const BAFixture& fx, Nat a, Nat s);

}  // namespace limitcopy

#endif
