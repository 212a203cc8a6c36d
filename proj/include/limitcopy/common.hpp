#ifndef LIMITCOPY_COMMON_HPP
#define LIMITCOPY_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace limitcopy {

using Nat = std::uint64_t;

// Type-enumeration indices can get large through nested pairing, so they are
// arbitrary-precision.
using Index = boost::multiprecision::cpp_int;

struct InvalidHorizon : std::runtime_error {
  InvalidHorizon() : std::runtime_error("horizon must be >= 1") {}
};
struct UnknownElement : std::runtime_error {
  explicit UnknownElement(const std::string& what) : std::runtime_error(what) {}
};
struct DecodeError : std::runtime_error {
  explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};
struct UnsupportedFormula : std::runtime_error {
  explicit UnsupportedFormula(const std::string& what) : std::runtime_error(what) {}
};
struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& what) : std::runtime_error(what) {}
};
struct PredicateViolation : std::runtime_error {
  explicit PredicateViolation(const std::string& what) : std::runtime_error(what) {}
};
struct FixtureIncoherent : std::runtime_error {
  explicit FixtureIncoherent(const std::string& what) : std::runtime_error(what) {}
};
struct InsufficientPrefix : std::runtime_error {
  explicit InsufficientPrefix(const std::string& what) : std::runtime_error(what) {}
};
struct MalformedName : std::runtime_error {
  explicit MalformedName(const std::string& what) : std::runtime_error(what) {}
};
struct OracleInconsistent : std::runtime_error {
  explicit OracleInconsistent(const std::string& what) : std::runtime_error(what) {}
};

// Cantor pairing on arbitrary-precision naturals.
Index pair_index(const Index& a, const Index& b);
void unpair_index(const Index& z, Index& a, Index& b);

// Bijection between finite sequences of naturals and naturals:
// [] <-> 0, (x:xs) <-> 1 + pair(x, code(xs)).
Index seq_encode(const std::vector<Index>& xs);
std::vector<Index> seq_decode(Index z);

}  // namespace limitcopy

#endif
