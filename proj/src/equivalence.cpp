#include "limitcopy/equivalence.hpp"

#include <algorithm>
#include <map>

namespace limitcopy {

CharacterApprox constant_character(std::set<std::pair<Nat, Nat>> pairs) {
  return CharacterApprox{[pairs](Nat) { return pairs; }};
}

Nat EquivStructure::count_classes() const {
  Nat mx = 0;
  for (Nat c : class_of) mx = std::max(mx, c + 1);
  return class_of.empty() ? 0 : mx;
}

Nat EquivStructure::class_size(Nat cls, Nat prefix) const {
  Nat n = 0;
  for (Nat e = 0; e < std::min<Nat>(prefix, class_of.size()); ++e)
    if (class_of[e] == cls) ++n;
  return n;
}

EquivStructure build_equivalence_copy(const CharacterApprox& chr, Nat horizon) {
  EquivStructure out;
  Nat next_class = 0;
  std::vector<Nat> growers;
  std::map<Nat, std::vector<Nat>> frozen;  // target size -> class ids
  constexpr Nat kGrowBatch = 6;

  auto emit = [&](Nat cls, Nat count) {
    for (Nat i = 0; i < count; ++i) out.class_of.push_back(cls);
  };

  for (Nat stage = 0; out.class_of.size() < horizon; ++stage) {
    auto g = chr.guess(stage);
    std::map<Nat, Nat> req;  // size -> max confirmed count
    for (const auto& [n, k] : g)
      if (n > 0) req[n] = std::max(req[n], k);

    // Release classes whose pair was ejected or whose count dropped.
    for (auto it = frozen.begin(); it != frozen.end();) {
      Nat want = req.count(it->first) ? req[it->first] : 0;
      auto& ids = it->second;
      while (ids.size() > want) {
        growers.push_back(ids.back());
        ids.pop_back();
      }
      if (ids.empty()) it = frozen.erase(it);
      else ++it;
    }
    // Create newly confirmed classes, each as one uninterrupted batch.
    for (const auto& [n, want] : req) {
      auto& ids = frozen[n];
      while (ids.size() < want) {
        Nat cls = next_class++;
        ids.push_back(cls);
        emit(cls, n);
      }
      if (ids.empty()) frozen.erase(n);
    }
    // One fresh infinite class per stage, then feed all existing growers.
    Nat cls = next_class++;
    growers.push_back(cls);
    emit(cls, kGrowBatch);
    for (Nat gcls : growers)
      if (gcls != cls) emit(gcls, 1);
  }
  out.class_of.resize(horizon);
  return out;
}

}  // namespace limitcopy
