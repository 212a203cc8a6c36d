#ifndef LIMITCOPY_ORDER_FIXTURE_HPP
#define LIMITCOPY_ORDER_FIXTURE_HPP

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "limitcopy/common.hpp"
#include "limitcopy/size_guess.hpp"

namespace limitcopy {

using Rat = boost::multiprecision::cpp_rational;

// A linear-order fixture: ground truth plus an enumeration schedule.
//
// The true ordering is a dense (key-indexed) arrangement of finite blocks.
// Elements of one block are consecutive; elements of distinct blocks are
// infinitely far apart (between any two block keys there are unenumerated
// blocks).  Dense parts are runs of size-1 blocks.
struct OrderFixture {
  struct Block {
    Rat key;
    Nat size = 1;
    // Stage at which the block's exact size becomes known to the guessing
    // apparatus.  Before this stage every cross-element interval touching the
    // block may still be guessed infinite.
    Nat reveal = 0;
  };
  struct Elem {
    Nat block = 0;
    Nat offset = 0;
  };

  std::vector<Block> blocks;
  std::vector<Elem> elems;    // element id -> location
  std::vector<Nat> arrival;   // element id -> stage; nondecreasing in id
  std::optional<Nat> bound;   // block-size bound N for the bounded class

  void validate() const;

  Nat count_at(Nat s) const;  // universe size at stage s
  bool enumerated(Nat e, Nat s) const { return arrival.at(e) <= s; }
  bool less(Nat a, Nat b) const;
  bool same_block(Nat a, Nat b) const { return elems.at(a).block == elems.at(b).block; }

  // True interval size: finite within a block, infinite across blocks.
  SizeGuess true_interval(Nat a, Nat b) const;

  // Elements strictly between a and b enumerated by stage s.
  Nat seen_between(Nat a, Nat b, Nat s) const;
  // Elements of a's block enumerated by stage s (the visible successor chain
  // around a).
  Nat seen_chain(Nat a, Nat s) const;
};

// Stage-s size guess for the interval (a, b), a < b required known.
// With a bound N: infinite as soon as more than N elements are seen between,
// otherwise the count seen so far.
SizeGuess interval_size(const OrderFixture& fx, Nat a, Nat b, Nat s,
                        std::optional<Nat> bound);

// Guess used by the unbounded (eta-quotient) labeling construction: infinite
// until the surrounding block's size is revealed, then exact.
SizeGuess interval_label_guess(const OrderFixture& fx, Nat a, Nat b, Nat s);

// Outer intervals (left of the least tuple element / right of the greatest).
SizeGuess outer_size_guess(const OrderFixture& fx, Nat a, bool left_side, Nat s);

}  // namespace limitcopy

#endif
