#ifndef LIMITCOPY_COMPLETION_HPP
#define LIMITCOPY_COMPLETION_HPP

#include <vector>

#include "limitcopy/btypes.hpp"

namespace limitcopy {

// Result of the greedy completion pass: the extension type q(u, x) generated
// by the base type p plus the accepted existentials.  Rejected atoms force
// their negations (the derived universal part of q).
struct GeneratedType {
  B1TypeCode base;
  std::vector<Literal> committed;   // accepted, in processing order; positive
  std::vector<Literal> universals;  // negations of rejected atoms
  Nat depth = 0;                    // canonical atoms processed

  enum class Verdict { True, False, Undecided };
  Verdict verdict(const ClassAtom& atom) const;
};

// A candidate location of the new element x relative to the base type:
// the extended type code together with x's identifier inside it
// (rank / variable / node, per class).
struct Placement {
  B1TypeCode ext;
  Nat x_pos = 0;
};

// All placements of x that could matter for literals whose counts are
// <= max_count and whose patterns have <= max_pattern nodes.  Finite by the
// interval / cell / subtree arithmetic of the three classes.
std::vector<Placement> candidate_placements(const B1TypeCode& p, Nat max_count,
                                            Nat max_pattern);

// Is there a placement of x satisfying every literal?  This is the
// consistency check the greedy pass runs; it only interrogates p's code.
bool literals_consistent(const B1TypeCode& p, const std::vector<Literal>& lits);

// Greedy completion: accept phi, then walk the canonical atom enumeration to
// `depth`, accepting each atom iff consistent with p and everything accepted
// so far.  Pure-tuple atoms are decided by p directly.
GeneratedType complete_type(const B1TypeCode& p, const ClassAtom& phi, Nat depth);

// Does every universal of q follow from p plus a finite conjunction of q's
// committed existentials?  (The conjunction of all of them is the strongest
// candidate, so checking it decides the matter.)
bool is_generated(const B1TypeCode& p, const GeneratedType& q);

}  // namespace limitcopy

#endif
