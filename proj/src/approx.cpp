#include "limitcopy/approx.hpp"

#include <memory>

namespace limitcopy {

ApproxOracle constant_oracle(Nat value) {
  return ApproxOracle{[value](Nat, Nat) { return value; },
                      "constant " + std::to_string(value)};
}

ApproxOracle table_oracle(std::vector<std::vector<Nat>> table) {
  auto shared = std::make_shared<std::vector<std::vector<Nat>>>(std::move(table));
  return ApproxOracle{[shared](Nat q, Nat s) -> Nat {
                        if (q >= shared->size() || (*shared)[q].empty()) return 0;
                        const auto& row = (*shared)[q];
                        return s < row.size() ? row[s] : row.back();
                      },
                      "table"};
}

StabilizationReport stabilization(const ApproxOracle& oracle, Nat q, Nat horizon,
                                  Nat window) {
  if (horizon == 0) throw InvalidHorizon();
  StabilizationReport report;
  report.query = q;
  Nat last = query(oracle, q, horizon);
  Nat settled = horizon;
  for (Nat s = horizon; s-- > 0;) {
    if (query(oracle, q, s) != last) break;
    settled = s;
  }
  if (horizon - settled >= window) {
    report.settled_at = settled;
    report.final_value = last;
  }
  return report;
}

}  // namespace limitcopy
