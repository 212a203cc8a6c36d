#ifndef LIMITCOPY_SIZE_GUESS_HPP
#define LIMITCOPY_SIZE_GUESS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "limitcopy/common.hpp"

namespace limitcopy {

// A size in N plus a distinguished infinity.  Infinity is a tag; it never
// participates in arithmetic.
class SizeGuess {
 public:
  SizeGuess() : infinite_(false), value_(0) {}

  static SizeGuess infinite() {
    SizeGuess g;
    g.infinite_ = true;
    return g;
  }
  static SizeGuess finite(Nat n) {
    SizeGuess g;
    g.value_ = n;
    return g;
  }

  bool is_infinite() const { return infinite_; }
  Nat value() const {
    if (infinite_) throw std::logic_error("SizeGuess: value() on infinity");
    return value_;
  }
  bool at_least(Nat n) const { return infinite_ || value_ >= n; }

  friend bool operator==(const SizeGuess& a, const SizeGuess& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator!=(const SizeGuess& a, const SizeGuess& b) { return !(a == b); }

  // Finite sizes in increasing order, infinity last.
  friend bool operator<(const SizeGuess& a, const SizeGuess& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }

  std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

  // inf <-> 0, finite n <-> n + 1.
  Nat to_code() const { return infinite_ ? 0 : value_ + 1; }
  static SizeGuess from_code(Nat code) {
    return code == 0 ? infinite() : finite(code - 1);
  }

 private:
  bool infinite_;
  Nat value_;
};

}  // namespace limitcopy

#endif
