#ifndef LIMITCOPY_ENGINE_HPP
#define LIMITCOPY_ENGINE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limitcopy/completion.hpp"
#include "limitcopy/presentation.hpp"

namespace limitcopy {

// Stage-indexed guess at the type of a tuple.  `code` is what the engine
// consults; `label` is the same guess as an enumeration index.
struct RLabeling {
  std::function<B1TypeCode(const std::vector<Nat>& tuple, Nat stage)> code;
  // May any label differ from stage-1?  Null means "assume yes".  Purely an
  // optimization hint: when false, guess revalidation is skipped because the
  // outcome is identical to the previous stage's.
  std::function<bool(Nat stage)> maybe_changed;

  Index label(const std::vector<Nat>& tuple, Nat stage) const {
    return encode_type(code(tuple, stage));
  }
};

// The presentation's canonical labeling (observe_tuple_type), with a
// per-stage cache so long runs stay cheap.
RLabeling fixture_labeling(const Presentation& p);

struct Requirement {
  enum Kind { EvenIntoRange, OddIntoDomain };
  Kind kind = EvenIntoRange;
  Nat target = 0;  // element of A (even) or of B (odd)
  Nat priority = 0;
};

Requirement requirement_at(Nat priority);

// Priority construction state.  B is a growing linear order whose elements
// carry committed position keys; committed positions and the keys ordering
// them are never retracted, only the map f is.
struct ConstructionState {
  struct MapEntry {
    Nat b = 0, a = 0;
    Nat req = 0;  // priority that added this pair
  };
  struct Support {
    std::vector<Nat> tuple;  // elements of A
    B1TypeCode code;         // guessed type at satisfaction time
  };
  struct Injury {
    Nat stage = 0;
    Nat priority = 0;
    std::string reason;
  };

  // B side
  Nat b_count = 0;
  std::vector<Rat> b_key;      // committed position of each B element
  std::vector<Nat> b_created;  // creation stage

  std::vector<MapEntry> f;
  std::map<Nat, Nat> last_image;  // b -> most recent image, kept over rollbacks
  std::map<Nat, GeneratedType> pledges;  // b -> last pledged extension type
  std::vector<std::vector<Support>> supports;  // per priority
  std::vector<char> satisfied;                 // per priority
  std::vector<Injury> injury_log;
  std::vector<std::string> trace;
  Nat stages_done = 0;

  std::optional<Nat> image_of(Nat b) const;
  std::optional<Nat> preimage_of(Nat a) const;
  std::map<Nat, Nat> current_map() const;
  Nat satisfied_upto() const;  // first unsatisfied priority
};

// One stage of the finite-injury construction (linear orders).
ConstructionState engine_step(ConstructionState st, const Presentation& p,
                              const RLabeling& labeler, Nat s);

ConstructionState run_engine(const Presentation& p, const RLabeling& labeler, Nat horizon);

// The built copy B as a linear-order presentation (one element per block,
// ordered by committed keys, enumerated at creation stages).
Presentation built_copy(const ConstructionState& st);

// f restricted to prefixes: dom covers the first k elements of B, ran the
// first k of A, bijectively, preserving the class's atomic relations (ground
// truth on both sides).  Coverage shortfall raises InsufficientPrefix.
bool verify_prefix_isomorphism(const Presentation& B, const Presentation& A,
                               const std::map<Nat, Nat>& f, Nat k);

}  // namespace limitcopy

#endif
