#ifndef LIMITCOPY_DIFFALG_FIELD_HPP
#define LIMITCOPY_DIFFALG_FIELD_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "limitcopy/diffalg/poly.hpp"

namespace limitcopy {

enum class Ans { In, Out };

// Answers atomic queries "q(x) = 0 ?" about a distinguished element over its
// base field.  Answers must be stable; committed() exposes the answer log for
// dumps and audits.
struct TypeOracle {
  virtual ~TypeOracle() = default;
  virtual Ans decide(const DiffPoly& q) = 0;
  virtual std::vector<std::pair<std::string, Ans>> committed() const { return {}; }
};

// Canonical bijective coding of rationals (numerator zigzagged, canonical
// lowest terms required on decode).
Index rat_code(const Rat& r);
std::optional<Rat> rat_decode(const Index& z);

// A differential field given by a canonical element list with computable
// operations.  Level 0 is the rationals (trivial derivation), interned
// lazily.  Level i+1 is generated over its base by one element x realizing
// the type oracle: elements are fractions of differential polynomials over
// the base, deduplicated by cross multiplication through the oracle.
struct FieldPresentation {
  Nat level = 0;
  std::shared_ptr<FieldPresentation> base;   // null at level 0
  std::shared_ptr<TypeOracle> lambda;        // null at level 0
  // Every element has derivative 0 (known at construction time); lets type
  // machinery reduce derivative variables away over algebraic extensions.
  bool all_constants = true;

  // level 0 universe
  std::vector<Rat> rats;
  std::map<Rat, Nat> rat_ids;

  // level >= 1 universe: canonical fraction per element
  struct Frac {
    DiffPoly num, den;
  };
  std::vector<Frac> fracs;
  Index frontier = 0;  // resumable cursor over fraction codes
  Nat gen = 0;         // id of the generator x

  static std::shared_ptr<FieldPresentation> rationals();

  Nat size() const { return level == 0 ? rats.size() : fracs.size(); }
  Nat from_rational(const Rat& r);
  Nat zero() { return from_rational(0); }
  Nat one() { return from_rational(1); }
  Nat embed(Nat base_id);  // level >= 1
  Nat generator() const;

  bool is_zero(Nat id);
  bool eq(Nat a, Nat b) { return a == b; }  // ids are canonical

  Nat add(Nat a, Nat b);
  Nat sub(Nat a, Nat b);
  Nat mul(Nat a, Nat b);
  Nat neg(Nat a);
  std::optional<Nat> div(Nat a, Nat b);  // nullopt iff b = 0
  Nat delta(Nat a);

  // Interns a fraction (level >= 1): nullopt when the oracle makes the
  // denominator 0.  Detects oracle inconsistency (name equal to two distinct
  // universe entries, or arithmetic nonsense on constants).
  std::optional<Nat> intern(Frac f);

  // Grows the universe to the requested size by enumerating fraction codes
  // from the resumable frontier, skipping names the oracle rules out.
  void grow_to(Nat universe_bound);

  // Canonical coding of polynomials over this field.  Level 0 codes
  // coefficients as rationals (independent of intern order); higher levels
  // code them as universe indices.  Decode rejects non-canonical forms.
  std::optional<DiffPoly> poly_from_code(const Index& z);
  // k-th canonical nonzero coefficient (level 0: rationals in code order;
  // level >= 1: universe ids in order).  nullopt when exhausted.
  std::optional<Nat> coef_at(Nat k);

  std::string name_str(Nat id);

  // i-th code that decodes to a valid polynomial over the base (level >= 1).
  const Index& nth_base_poly_code(Nat i);

 private:
  bool lambda_zero(const DiffPoly& q);  // oracle zero-test with sanity checks
  std::map<std::string, Nat> frac_ids;  // exact-key fast path
  std::vector<Index> base_codes;        // cache for nth_base_poly_code
  Index base_scan = 0;
  std::vector<Nat> coef_cache;          // cache for coef_at (level 0)
  Index coef_scan = 0;
};

// Builds the extension of k by one element realizing lambda, with the
// universe grown to universe_bound names.
std::shared_ptr<FieldPresentation> extend_field(std::shared_ptr<FieldPresentation> k,
                                                std::shared_ptr<TypeOracle> lambda,
                                                Nat universe_bound);

}  // namespace limitcopy

#endif
