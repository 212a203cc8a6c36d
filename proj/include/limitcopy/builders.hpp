#ifndef LIMITCOPY_BUILDERS_HPP
#define LIMITCOPY_BUILDERS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limitcopy/engine.hpp"
#include "limitcopy/presentation.hpp"

namespace limitcopy {

// Pair of elements z < z' strictly between c and c' whose three flanking
// intervals are all currently guessed infinite; protects committed chains
// against later arrivals.
struct BufferPair {
  Nat z = 0, zp = 0;
  friend bool operator==(const BufferPair& a, const BufferPair& b) {
    return a.z == b.z && a.zp == b.zp;
  }
};

// First qualifying pair in standard pair-code order at stage s; nullopt while
// none is enumerated yet.
std::optional<BufferPair> find_buffer_pair(const Presentation& p, Nat c, Nat cp, Nat s);

// A copy built stage by stage, together with its labeling, the tentative map
// into the source at the horizon, and the per-stage construction record.
struct LabeledCopy {
  Presentation copy;
  RLabeling labeling;
  std::map<Nat, Nat> f;  // copy element -> source element
  std::vector<std::string> map_trace;
  std::vector<ConstructionState::Injury> injuries;
};

// Linear orders, dense arrangements of finite blocks with scripted size
// reveals: committed interval-size labels, final from commitment.
LabeledCopy ordering_build_labeled_copy(const Presentation& p, Nat horizon);

// Boolean algebras without 1-atoms: size labels committed after a stability
// window, look-ahead on fresh infinite-looking elements, rollback of the
// lower-priority label suffix on refutation.
LabeledCopy ba_build_labeled_copy(const Presentation& p, Nat horizon);

// Trees: infinity/finite-subtree labels, never retracted; a node whose image
// turns out finite is retargeted to a later matching successor instead.
LabeledCopy tree_build_labeled_copy(const Presentation& p, Nat horizon);

}  // namespace limitcopy

#endif
