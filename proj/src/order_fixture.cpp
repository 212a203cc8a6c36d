#include "limitcopy/order_fixture.hpp"

#include <algorithm>
#include <set>

namespace limitcopy {

void OrderFixture::validate() const {
  if (elems.size() != arrival.size())
    throw FixtureIncoherent("order fixture: elems/arrival size mismatch");
  std::set<std::pair<Nat, Nat>> seen;
  std::set<Rat> keys;
  for (const auto& b : blocks) {
    if (b.size == 0) throw FixtureIncoherent("order fixture: empty block");
    if (!keys.insert(b.key).second)
      throw FixtureIncoherent("order fixture: duplicate block key");
  }
  for (Nat i = 0; i < elems.size(); ++i) {
    const auto& e = elems[i];
    if (e.block >= blocks.size())
      throw FixtureIncoherent("order fixture: element in unknown block");
    if (e.offset >= blocks[e.block].size)
      throw FixtureIncoherent("order fixture: offset out of block range");
    if (!seen.insert({e.block, e.offset}).second)
      throw FixtureIncoherent("order fixture: duplicate slot");
    if (i > 0 && arrival[i] < arrival[i - 1])
      throw FixtureIncoherent("order fixture: arrival stages must be nondecreasing");
    if (bound && blocks[e.block].size > *bound)
      throw FixtureIncoherent("order fixture: block exceeds declared bound");
  }
}

Nat OrderFixture::count_at(Nat s) const {
  Nat n = 0;
  while (n < arrival.size() && arrival[n] <= s) ++n;
  return n;
}

bool OrderFixture::less(Nat a, Nat b) const {
  const auto& ea = elems.at(a);
  const auto& eb = elems.at(b);
  if (ea.block == eb.block) return ea.offset < eb.offset;
  return blocks[ea.block].key < blocks[eb.block].key;
}

SizeGuess OrderFixture::true_interval(Nat a, Nat b) const {
  const auto& ea = elems.at(a);
  const auto& eb = elems.at(b);
  if (ea.block != eb.block) return SizeGuess::infinite();
  Nat lo = std::min(ea.offset, eb.offset), hi = std::max(ea.offset, eb.offset);
  return SizeGuess::finite(hi - lo - 1);
}

Nat OrderFixture::seen_between(Nat a, Nat b, Nat s) const {
  Nat n = 0;
  for (Nat e = 0; e < elems.size() && arrival[e] <= s; ++e) {
    if (e == a || e == b) continue;
    if (less(a, e) && less(e, b)) ++n;
  }
  return n;
}

Nat OrderFixture::seen_chain(Nat a, Nat s) const {
  Nat n = 0;
  for (Nat e = 0; e < elems.size() && arrival[e] <= s; ++e) {
    if (same_block(a, e)) ++n;
  }
  return n;
}

SizeGuess interval_size(const OrderFixture& fx, Nat a, Nat b, Nat s,
                        std::optional<Nat> bound) {
  if (!fx.enumerated(a, s) || !fx.enumerated(b, s))
    throw UnknownElement("interval_size: endpoint not yet enumerated");
  if (!fx.less(a, b)) throw UnknownElement("interval_size: a < b not known");
  Nat n = fx.seen_between(a, b, s);
  if (bound && n > *bound) return SizeGuess::infinite();
  return SizeGuess::finite(n);
}

SizeGuess interval_label_guess(const OrderFixture& fx, Nat a, Nat b, Nat s) {
  if (!fx.enumerated(a, s) || !fx.enumerated(b, s))
    throw UnknownElement("interval_label_guess: endpoint not yet enumerated");
  if (fx.bound) return interval_size(fx, a, b, s, fx.bound);
  if (fx.same_block(a, b) && s >= fx.blocks[fx.elems[a].block].reveal)
    return fx.true_interval(a, b);
  return SizeGuess::infinite();
}

SizeGuess outer_size_guess(const OrderFixture& fx, Nat a, bool left_side, Nat s) {
  if (!fx.enumerated(a, s))
    throw UnknownElement("outer_size_guess: element not yet enumerated");
  if (!fx.bound) return SizeGuess::infinite();
  Nat n = 0;
  for (Nat e = 0; e < fx.elems.size() && fx.arrival[e] <= s; ++e) {
    if (e == a) continue;
    if (left_side ? fx.less(e, a) : fx.less(a, e)) ++n;
  }
  if (n > *fx.bound) return SizeGuess::infinite();
  return SizeGuess::finite(n);
}

}  // namespace limitcopy
