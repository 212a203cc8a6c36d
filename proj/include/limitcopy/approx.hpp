#ifndef LIMITCOPY_APPROX_HPP
#define LIMITCOPY_APPROX_HPP

#include <functional>
#include <optional>
#include <string>

#include "limitcopy/common.hpp"

namespace limitcopy {

// Stage-indexed total guess function standing in for a limit-computable
// predicate or function.  The limit value of a query is whatever the answers
// settle on; within a finite horizon "settled" is certified by a dwell window.
struct ApproxOracle {
  std::function<Nat(Nat query, Nat stage)> answer;
  std::string description;
};

ApproxOracle constant_oracle(Nat value);

// answer(q, s) = table[q][s] for covered cells, clamped to the last column
// (and 0 for uncovered queries).
ApproxOracle table_oracle(std::vector<std::vector<Nat>> table);

inline Nat query(const ApproxOracle& oracle, Nat q, Nat s) {
  return oracle.answer(q, s);
}

struct StabilizationReport {
  Nat query = 0;
  // Least stage from which the answer stays constant through the horizon;
  // empty when the dwell was shorter than the confirmation window.
  std::optional<Nat> settled_at;
  std::optional<Nat> final_value;
};

constexpr Nat kDefaultConfirmationWindow = 10;

StabilizationReport stabilization(const ApproxOracle& oracle, Nat q, Nat horizon,
                                  Nat window = kDefaultConfirmationWindow);

}  // namespace limitcopy

#endif
