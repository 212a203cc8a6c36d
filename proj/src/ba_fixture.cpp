#include "limitcopy/ba_fixture.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace limitcopy {

namespace {

bool is_prefix(const std::string& p, const std::string& s) {
  return s.size() >= p.size() && s.compare(0, p.size(), p) == 0;
}

// Complement of the part-set S inside the piece addressed by `prefix`.
void complement_rec(const std::string& prefix, const std::set<std::string>& s,
                    std::set<std::string>& out) {
  for (const auto& p : s) {
    if (is_prefix(p, prefix)) return;  // fully covered
  }
  bool any_below = false;
  for (const auto& p : s) {
    if (is_prefix(prefix, p)) {
      any_below = true;
      break;
    }
  }
  if (!any_below) {
    out.insert(prefix);
    return;
  }
  complement_rec(prefix + "0", s, out);
  complement_rec(prefix + "1", s, out);
}

std::set<std::string> parts_meet(const std::set<std::string>& a,
                                 const std::set<std::string>& b) {
  std::set<std::string> out;
  for (const auto& p : a)
    for (const auto& q : b) {
      if (is_prefix(p, q)) out.insert(q);
      else if (is_prefix(q, p)) out.insert(p);
    }
  return out;
}

}  // namespace

BATerm BATerm::zero(Nat num_regions) {
  BATerm t;
  t.region_parts.resize(num_regions);
  return t;
}

BATerm BATerm::one(Nat num_atoms, Nat num_regions) {
  BATerm t = zero(num_regions);
  if (num_atoms > 0) t.atoms = (num_atoms >= 64) ? ~0ull : ((1ull << num_atoms) - 1);
  for (auto& rp : t.region_parts) rp.insert("");
  return t;
}

BATerm BATerm::atom(Nat i, Nat num_regions) {
  BATerm t = zero(num_regions);
  t.atoms = 1ull << i;
  return t;
}

BATerm BATerm::region_piece(Nat region, const std::string& path, Nat num_regions) {
  BATerm t = zero(num_regions);
  t.region_parts.at(region).insert(path);
  return t;
}

void BATerm::normalize() {
  for (auto& rp : region_parts) {
    bool changed = true;
    while (changed) {
      changed = false;
      // drop parts covered by a shorter part
      for (auto it = rp.begin(); it != rp.end();) {
        bool covered = false;
        for (const auto& q : rp) {
          if (q != *it && is_prefix(q, *it)) {
            covered = true;
            break;
          }
        }
        if (covered) {
          it = rp.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
      // merge sibling pairs
      for (auto it = rp.begin(); it != rp.end(); ++it) {
        const std::string& p = *it;
        if (!p.empty() && p.back() == '0') {
          std::string sib = p.substr(0, p.size() - 1) + "1";
          if (rp.count(sib)) {
            std::string parent = p.substr(0, p.size() - 1);
            rp.erase(p);
            rp.erase(sib);
            rp.insert(parent);
            changed = true;
            break;
          }
        }
      }
    }
  }
}

bool BATerm::is_zero() const {
  if (atoms != 0) return false;
  for (const auto& rp : region_parts)
    if (!rp.empty()) return false;
  return true;
}

bool BATerm::has_region_part() const {
  for (const auto& rp : region_parts)
    if (!rp.empty()) return true;
  return false;
}

Nat BATerm::atom_count() const { return static_cast<Nat>(std::popcount(atoms)); }

SizeGuess BATerm::size() const {
  if (has_region_part()) return SizeGuess::infinite();
  return SizeGuess::finite(atom_count());
}

BATerm meet(const BATerm& a, const BATerm& b) {
  BATerm t = BATerm::zero(a.region_parts.size());
  t.atoms = a.atoms & b.atoms;
  for (Nat r = 0; r < t.region_parts.size(); ++r)
    t.region_parts[r] = parts_meet(a.region_parts[r], b.region_parts[r]);
  t.normalize();
  return t;
}

BATerm join(const BATerm& a, const BATerm& b) {
  BATerm t = BATerm::zero(a.region_parts.size());
  t.atoms = a.atoms | b.atoms;
  for (Nat r = 0; r < t.region_parts.size(); ++r) {
    t.region_parts[r] = a.region_parts[r];
    t.region_parts[r].insert(b.region_parts[r].begin(), b.region_parts[r].end());
  }
  t.normalize();
  return t;
}

BATerm BATerm::complement_in(const BATerm& universe) const {
  BATerm t = zero(region_parts.size());
  t.atoms = universe.atoms & ~atoms;
  for (Nat r = 0; r < region_parts.size(); ++r) {
    std::set<std::string> inner;
    for (const auto& up : universe.region_parts[r])
      complement_rec(up, region_parts[r], inner);
    // restrict to the universe (complement_rec already starts inside it)
    t.region_parts[r] = std::move(inner);
  }
  t.normalize();
  return t;
}

bool BATerm::leq(const BATerm& b) const { return meet(*this, b) == *this; }

bool BATerm::disjoint_with(const BATerm& b) const { return meet(*this, b).is_zero(); }

bool operator==(const BATerm& a, const BATerm& b) {
  BATerm x = a, y = b;
  x.normalize();
  y.normalize();
  return x.atoms == y.atoms && x.region_parts == y.region_parts;
}

bool operator<(const BATerm& a, const BATerm& b) {
  if (a.atoms != b.atoms) return a.atoms < b.atoms;
  return a.region_parts < b.region_parts;
}

std::string BATerm::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (Nat i = 0; i < 64; ++i) {
    if (atoms & (1ull << i)) {
      if (!first) os << ",";
      os << "a" << i;
      first = false;
    }
  }
  for (Nat r = 0; r < region_parts.size(); ++r) {
    for (const auto& p : region_parts[r]) {
      if (!first) os << ",";
      os << "r" << r << ":" << (p.empty() ? "*" : p);
      first = false;
    }
  }
  os << "}";
  return os.str();
}

void BAFixture::validate() const {
  if (elems.size() != arrival.size())
    throw FixtureIncoherent("ba fixture: elems/arrival size mismatch");
  if (num_atoms > 64) throw FixtureIncoherent("ba fixture: too many atoms");
  bool saw_zero = false, saw_one = false;
  for (Nat i = 0; i < elems.size(); ++i) {
    const auto& t = elems[i];
    if (t.region_parts.size() != num_regions)
      throw FixtureIncoherent("ba fixture: term region arity mismatch");
    if (num_atoms < 64 && (t.atoms >> num_atoms) != 0)
      throw FixtureIncoherent("ba fixture: term uses unknown atom");
    if (i > 0 && arrival[i] < arrival[i - 1])
      throw FixtureIncoherent("ba fixture: arrival stages must be nondecreasing");
    for (Nat j = 0; j < i; ++j)
      if (elems[j] == t) throw FixtureIncoherent("ba fixture: duplicate element value");
    if (t.is_zero()) saw_zero = true;
    if (t == one()) saw_one = true;
  }
  if (!saw_zero || !saw_one)
    throw FixtureIncoherent("ba fixture: 0 and 1 must be enumerated");
}

Nat BAFixture::count_at(Nat s) const {
  Nat n = 0;
  while (n < arrival.size() && arrival[n] <= s) ++n;
  return n;
}

bool BAFixture::region_revealed_in(const BATerm& term, Nat s) const {
  if (!term.has_region_part()) return false;
  for (Nat e = 0; e < elems.size() && arrival[e] <= s; ++e) {
    if (elems[e].has_region_part() && elems[e].leq(term) && reveal_of(e) <= s)
      return true;
  }
  return false;
}

AtomGuess ba_atom_guess(const BAFixture& fx, Nat a, Nat s) {
  if (!fx.enumerated(a, s)) throw UnknownElement("ba_atom_guess: not enumerated");
  const BATerm& ta = fx.elems[a];
  if (ta.has_region_part() && fx.reveal_of(a) <= s) return AtomGuess::NonAtom;
  for (Nat e = 0; e < fx.elems.size() && fx.arrival[e] <= s; ++e) {
    const BATerm& tb = fx.elems[e];
    if (!tb.is_zero() && tb.leq(ta) && tb != ta) return AtomGuess::NonAtom;
  }
  return AtomGuess::Atom;
}

SizeGuess ba_element_size(const BAFixture& fx, Nat a, Nat s) {
  if (!fx.enumerated(a, s)) throw UnknownElement("ba_element_size: not enumerated");
  const BATerm& ta = fx.elems[a];
  if (ta.is_zero()) return SizeGuess::finite(0);
  if (fx.region_revealed_in(ta, s)) return SizeGuess::infinite();
  std::vector<Nat> atoms_below;
  for (Nat e = 0; e < fx.elems.size() && fx.arrival[e] <= s; ++e) {
    if (fx.elems[e].is_zero()) continue;
    if (ba_atom_guess(fx, e, s) == AtomGuess::Atom && fx.elems[e].leq(ta))
      atoms_below.push_back(e);
  }
  BATerm acc = BATerm::zero(fx.num_regions);
  for (Nat i = 0; i < atoms_below.size(); ++i) {
    for (Nat j = i + 1; j < atoms_below.size(); ++j) {
      if (!fx.elems[atoms_below[i]].disjoint_with(fx.elems[atoms_below[j]]))
        return SizeGuess::infinite();  // overlapping "atoms": not yet resolved
    }
    acc = join(acc, fx.elems[atoms_below[i]]);
  }
  if (acc == ta) return SizeGuess::finite(atoms_below.size());
  return SizeGuess::infinite();
}

}  // namespace limitcopy
