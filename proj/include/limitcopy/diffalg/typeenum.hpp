#ifndef LIMITCOPY_DIFFALG_TYPEENUM_HPP
#define LIMITCOPY_DIFFALG_TYPEENUM_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "limitcopy/diffalg/names.hpp"

namespace limitcopy {

// Raised when neither the decider nor the reducibility search settles a
// query within budget; the query is reported, not answered.
struct TypeStalled : std::runtime_error {
  std::string query;
  explicit TypeStalled(std::string q)
      : std::runtime_error("type enumeration stalled on: " + q), query(std::move(q)) {}
};

// All polynomials over k of order strictly below order(p), drawn from the
// canonical poly codes 0..size_bound.  Order 0 gives an empty stream; the
// zero polynomial (order infinity) admits every finite order.
std::vector<DiffPoly> lower_order_stream(FieldPresentation& k, const DiffPoly& p,
                                         const Index& size_bound);

struct Factorization {
  DiffPoly r, s;
};

// Searches candidate divisors in canonical order (monic, degree-bounded by
// p) and verifies each candidate pair by exact product expansion.  Budget
// counts candidates; NoneFound is not a proof of irreducibility.
std::optional<Factorization> reducibility_witness(FieldPresentation& k,
                                                  const DiffPoly& p, Nat budget);

// Bounded consistency service standing in for proof enumeration.
struct ConsistencyDecider {
  enum class Verdict { Zero, NonZero, Unknown };
  virtual ~ConsistencyDecider() = default;
  virtual Verdict judge(FieldPresentation& k, const DiffPoly& p,
                        const DiffPoly& q, Nat budget) = 0;
};

// Exact arithmetic in the explicitly constructed algebraic extension: for
// order-0 p over a constant base, derivative variables vanish and membership
// is a univariate remainder test; lower-order queries fall to the minimality
// axioms.  Everything else is Unknown.
struct AlgebraicDecider : ConsistencyDecider {
  Verdict judge(FieldPresentation& k, const DiffPoly& p, const DiffPoly& q,
                Nat budget) override;
};

// Always Unknown: exercises the reducibility / greedy fallback path.
struct StallingDecider : ConsistencyDecider {
  Verdict judge(FieldPresentation&, const DiffPoly&, const DiffPoly&, Nat) override {
    return Verdict::Unknown;
  }
};

// Type oracle built query by query: commits p = 0 up front, then races the
// decider against the reducibility search; once p is seen reducible (or in
// greedy-from-scratch mode) it answers greedily, auditing arithmetic
// consistency of the committed answers.
class EnumeratedType : public TypeOracle {
 public:
  EnumeratedType(std::shared_ptr<FieldPresentation> k, DiffPoly p,
                 std::shared_ptr<ConsistencyDecider> decider, Nat budget,
                 bool greedy_only = false);

  Ans decide(const DiffPoly& q) override;
  std::vector<std::pair<std::string, Ans>> committed() const override;

  bool reducible_detected() const { return reducible_; }
  // queries must be built over this field; handles from another one are junk
  const std::shared_ptr<FieldPresentation>& base_field() const { return k_; }
  const std::optional<Factorization>& witness() const { return witness_; }
  // Full pairwise arithmetic audit of the committed answers (zero and
  // constant rules, scalar multiples, products in a field).  Returns the
  // number of violations and records them; evidence of a reducible p
  // slipping past the bounded search is logged, never asserted.
  Nat audit_all();
  const std::vector<std::string>& inconsistencies() const { return inconsist_; }

 private:
  Ans greedy_answer(const DiffPoly& q);
  void commit(const DiffPoly& q, Ans a);
  bool audit_with(const DiffPoly& q, Ans a);
  void enter_greedy();  // builds the product index for answers so far

  std::vector<std::string> inconsist_;

  std::shared_ptr<FieldPresentation> k_;
  DiffPoly p_;
  std::shared_ptr<ConsistencyDecider> decider_;
  Nat budget_;
  bool greedy_ = false;
  bool reducible_ = false;
  bool reducibility_checked_ = false;
  std::optional<Factorization> witness_;
  std::vector<std::pair<DiffPoly, Ans>> log_;       // commit order
  std::map<std::string, Nat> memo_;                 // poly key -> log index
  // key of u*v -> committed pairs (u, v); lets the audit see a new query as
  // a product of old answers without rescanning all pairs
  std::map<std::string, std::vector<std::pair<Nat, Nat>>> prods_;
};

std::shared_ptr<EnumeratedType> enumerate_type(std::shared_ptr<FieldPresentation> k,
                                               const DiffPoly& p,
                                               std::shared_ptr<ConsistencyDecider> decider,
                                               Nat budget);

// One pipeline result per formal tuple: the materialized tower and the type
// oracles for each coordinate.
struct TypeEntry {
  Nat tuple_index = 0;  // position in enumerate_formal_tuples order
  std::vector<FormalPoly> tuple;
  std::vector<std::shared_ptr<FieldPresentation>> fields;  // K_1..K_n, possibly short
  std::vector<std::shared_ptr<EnumeratedType>> types;
  std::vector<bool> undefined;  // coordinate had no value; greedy fallback used
  bool stalled = false;
  Nat stalled_coord = 0;
  std::string stall_query;
  // the greedy completion is not guaranteed globally consistent; detected
  // contradictions are recorded here, never asserted
  bool inconsistent = false;
  std::string inconsistency;
};

// materialize -> enumerate_type -> extend_field per coordinate, for every
// formal tuple up to tuple_bound.
std::vector<TypeEntry> enumerate_types_n(Nat n, Nat budget,
                                         std::shared_ptr<ConsistencyDecider> decider,
                                         Nat tuple_size_bound, Nat universe_bound);

}  // namespace limitcopy

#endif
