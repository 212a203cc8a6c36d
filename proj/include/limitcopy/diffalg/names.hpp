#ifndef LIMITCOPY_DIFFALG_NAMES_HPP
#define LIMITCOPY_DIFFALG_NAMES_HPP

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "limitcopy/diffalg/field.hpp"

namespace limitcopy {

struct FormalPoly;

// Formal name in the coefficient tower: a level-0 name is a rational; a
// level-i name is a quotient of two level-i formal polynomials (denominator
// syntactically present, possibly denoting 0 under a given oracle).
struct FormalName {
  Nat level = 0;
  Rat leaf = 0;                          // level 0
  std::shared_ptr<FormalPoly> num, den;  // level >= 1
};

// Formal differential polynomial in the level-th indeterminate, with level-1
// formal names for coefficients.  Terms are sorted by monomial; level-1
// coefficients must be nonzero rationals (higher levels may denote 0 only
// under an oracle, so every name is kept).
struct FormalPoly {
  Nat level = 1;
  std::vector<std::pair<Mono, FormalName>> terms;
};

// Serialization size: monomials weigh 1 plus (i+1) per power of the i-th
// derivative, rational leaves weigh 1 plus their canonical code, quotients
// and polynomials add 1 for the node.  Finitely many objects per size.
Nat mono_size(const Mono& m);
Nat formal_name_size(const FormalName& f);
Nat formal_poly_size(const FormalPoly& p);

std::string formal_name_str(const FormalName& f);
std::string formal_poly_str(const FormalPoly& p);

// All well-formed n-tuples (p_1,...,p_n), p_i at level i, with total
// serialization size <= size_bound; each exactly once, deterministic order.
std::vector<std::vector<FormalPoly>> enumerate_formal_tuples(Nat n, Nat size_bound);

// Bottom-up evaluation of a name over a presentation of its level (lower
// levels embed upward).  nullopt = no value (some denominator is 0).
std::optional<Nat> evaluate_name(const FormalName& f,
                                 std::shared_ptr<FieldPresentation> k);

// Evaluates every coefficient of a level-(i+1) formal polynomial over the
// level-i presentation; nullopt if any coefficient has no value.
std::optional<DiffPoly> materialize_poly(const FormalPoly& p,
                                         std::shared_ptr<FieldPresentation> k);

}  // namespace limitcopy

#endif
