#ifndef LIMITCOPY_DIFFALG_POLY_HPP
#define LIMITCOPY_DIFFALG_POLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limitcopy/common.hpp"
#include "limitcopy/order_fixture.hpp"  // Rat

namespace limitcopy {

struct FieldPresentation;

// Monomial in x, dx, d2x, ...: exponent vector, trailing zeros trimmed.
// Index i is the exponent of the i-th derivative of x.
using Mono = std::vector<Nat>;

// Sparse differential polynomial.  Coefficients are element ids of some
// FieldPresentation (passed to every operation); ids are canonical within a
// presentation, so two equal polynomials over the same field compare equal
// as plain maps.  No zero coefficients stored.
struct DiffPoly {
  std::map<Mono, Nat> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms == b.terms; }
  friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }
  friend bool operator<(const DiffPoly& a, const DiffPoly& b) { return a.terms < b.terms; }
};

// (order, degree): order is the greatest n such that the n-th derivative of x
// appears, infinite for the zero polynomial; degree is the highest power of
// that derivative.  Compared lexicographically, infinite order greatest.
struct Rank {
  bool order_infinite = false;
  Nat order = 0;
  Nat degree = 0;

  static Rank infinite() { return {true, 0, 0}; }
  friend bool operator==(const Rank& a, const Rank& b) {
    if (a.order_infinite != b.order_infinite) return false;
    if (a.order_infinite) return true;
    return a.order == b.order && a.degree == b.degree;
  }
  friend bool operator<(const Rank& a, const Rank& b) {
    if (a.order_infinite) return false;
    if (b.order_infinite) return true;
    if (a.order != b.order) return a.order < b.order;
    return a.degree < b.degree;
  }
  std::string str() const;
};

Rank rank_of(const DiffPoly& p);
// nullopt for the zero polynomial.
std::optional<Nat> order_of(const DiffPoly& p);

// Construction helpers.
DiffPoly poly_zero();
DiffPoly poly_const(FieldPresentation& k, const Rat& c);
DiffPoly poly_coef(Nat coef_id);  // constant with a given element id
DiffPoly poly_var(FieldPresentation& k, Nat deriv);  // deriv-th derivative of x
DiffPoly poly_term(Nat coef_id, Mono m);

DiffPoly poly_add(FieldPresentation& k, const DiffPoly& a, const DiffPoly& b);
DiffPoly poly_sub(FieldPresentation& k, const DiffPoly& a, const DiffPoly& b);
DiffPoly poly_neg(FieldPresentation& k, const DiffPoly& a);
DiffPoly poly_mul(FieldPresentation& k, const DiffPoly& a, const DiffPoly& b);
DiffPoly poly_scale(FieldPresentation& k, Nat coef_id, const DiffPoly& a);

// Formal derivative: additivity plus the product rule on each monomial, with
// the coefficient derived through the field's own derivation.
DiffPoly differentiate(FieldPresentation& k, const DiffPoly& p);

bool poly_is_constant(const DiffPoly& p);
// Per-variable degree (0 if the variable never appears).
Nat poly_degree_in(const DiffPoly& p, Nat deriv);

// Canonical id-based key; stable within one presentation.
std::string poly_key(const DiffPoly& p);
// Human-readable form with coefficient names from the field.
std::string poly_str(FieldPresentation& k, const DiffPoly& p);

}  // namespace limitcopy

#endif
