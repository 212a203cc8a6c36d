#include "limitcopy/diffalg/names.hpp"

#include <algorithm>
#include <sstream>

namespace limitcopy {

namespace {

std::string mono_str(const Mono& m) {
  std::ostringstream os;
  for (Nat i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    os << "*";
    if (i == 0) os << "x";
    else if (i == 1) os << "dx";
    else os << "d" << i << "x";
    if (m[i] > 1) os << "^" << m[i];
  }
  return os.str();
}

// Monomials of size <= cap, sorted by (size, exponent vector).  Each trimmed
// vector appears once: the recursion records a vector exactly when its last
// entry is nonzero.
std::vector<std::pair<Mono, Nat>> monos_upto(Nat cap) {
  std::vector<std::pair<Mono, Nat>> out;
  if (cap < 1) return out;
  out.emplace_back(Mono{}, 1);
  Mono cur;
  auto rec = [&](auto&& self, Nat var, Nat left) -> void {
    for (Nat e = 0; e * (var + 1) <= left; ++e) {
      cur.push_back(e);
      if (e >= 1) out.emplace_back(cur, 1 + (cap - 1) - (left - e * (var + 1)));
      if (var + 2 <= left - e * (var + 1)) self(self, var + 1, left - e * (var + 1));
      cur.pop_back();
    }
  };
  rec(rec, 0, cap - 1);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  return out;
}

std::vector<std::pair<FormalPoly, Nat>> polys_upto(Nat level, Nat cap);

// Names of a level with size <= cap; level-0 zero excluded when nonzero set.
std::vector<std::pair<FormalName, Nat>> names_upto(Nat level, Nat cap, bool nonzero) {
  std::vector<std::pair<FormalName, Nat>> out;
  if (level == 0) {
    for (Nat code = 0; code + 1 <= cap; ++code) {
      auto r = rat_decode(code);
      if (!r) continue;
      if (nonzero && *r == 0) continue;
      FormalName f;
      f.level = 0;
      f.leaf = *r;
      out.emplace_back(std::move(f), code + 1);
    }
    return out;
  }
  if (cap < 3) return out;
  auto polys = polys_upto(level, cap - 2);
  for (const auto& [num, sn] : polys) {
    for (const auto& [den, sd] : polys) {
      if (1 + sn + sd > cap) break;  // sorted by size
      FormalName f;
      f.level = level;
      f.num = std::make_shared<FormalPoly>(num);
      f.den = std::make_shared<FormalPoly>(den);
      out.emplace_back(std::move(f), 1 + sn + sd);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

std::vector<std::pair<FormalPoly, Nat>> polys_upto(Nat level, Nat cap) {
  std::vector<std::pair<FormalPoly, Nat>> out;
  if (cap < 1) return out;
  auto monos = monos_upto(cap > 1 ? cap - 1 : 0);
  auto names = names_upto(level - 1, cap > 1 ? cap - 1 : 0, level == 1);
  FormalPoly cur;
  cur.level = level;
  auto rec = [&](auto&& self, Nat mono_start, Nat left) -> void {
    FormalPoly p = cur;
    std::sort(p.terms.begin(), p.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.emplace_back(std::move(p), cap - left);
    for (Nat mi = mono_start; mi < monos.size(); ++mi) {
      if (monos[mi].second >= left) break;  // need room for a name too
      for (const auto& [nm, ns] : names) {
        Nat tsize = monos[mi].second + ns;
        if (tsize > left) break;  // names sorted by size
        cur.terms.emplace_back(monos[mi].first, nm);
        self(self, mi + 1, left - tsize);
        cur.terms.pop_back();
      }
    }
  };
  rec(rec, 0, cap - 1);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second < b.second;
  });
  return out;
}

}  // namespace

Nat mono_size(const Mono& m) {
  Nat s = 1;
  for (Nat i = 0; i < m.size(); ++i) s += (i + 1) * m[i];
  return s;
}

Nat formal_name_size(const FormalName& f) {
  if (f.level == 0) return 1 + static_cast<Nat>(rat_code(f.leaf));
  return 1 + formal_poly_size(*f.num) + formal_poly_size(*f.den);
}

Nat formal_poly_size(const FormalPoly& p) {
  Nat s = 1;
  for (const auto& [m, c] : p.terms) s += mono_size(m) + formal_name_size(c);
  return s;
}

std::string formal_name_str(const FormalName& f) {
  if (f.level == 0) {
    std::ostringstream os;
    os << f.leaf;
    return os.str();
  }
  return "(" + formal_poly_str(*f.num) + ")/(" + formal_poly_str(*f.den) + ")";
}

std::string formal_poly_str(const FormalPoly& p) {
  if (p.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms) {
    if (!first) os << " + ";
    first = false;
    os << formal_name_str(c) << mono_str(m);
  }
  return os.str();
}

std::vector<std::vector<FormalPoly>> enumerate_formal_tuples(Nat n, Nat size_bound) {
  if (n < 1) throw PreconditionViolated("enumerate_formal_tuples: n >= 1");
  std::vector<std::vector<std::pair<FormalPoly, Nat>>> per_level;
  for (Nat i = 1; i <= n; ++i)
    per_level.push_back(polys_upto(i, size_bound >= n ? size_bound - (n - 1) : 0));
  std::vector<std::vector<FormalPoly>> out;
  std::vector<FormalPoly> cur;
  auto rec = [&](auto&& self, Nat coord, Nat left) -> void {
    if (coord == n) {
      out.push_back(cur);
      return;
    }
    for (const auto& [p, s] : per_level[coord]) {
      if (s > left) break;  // sorted by size
      cur.push_back(p);
      self(self, coord + 1, left - s);
      cur.pop_back();
    }
  };
  rec(rec, 0, size_bound);
  return out;
}

std::optional<Nat> evaluate_name(const FormalName& f,
                                 std::shared_ptr<FieldPresentation> k) {
  if (f.level > k->level)
    throw MalformedName("evaluate_name: name deeper than the presentation");
  if (f.level < k->level) {
    auto below = evaluate_name(f, k->base);
    if (!below) return std::nullopt;
    return k->embed(*below);
  }
  if (f.level == 0) return k->from_rational(f.leaf);
  auto num = materialize_poly(*f.num, k->base);
  auto den = materialize_poly(*f.den, k->base);
  if (!num || !den) return std::nullopt;
  return k->intern({std::move(*num), std::move(*den)});
}

std::optional<DiffPoly> materialize_poly(const FormalPoly& p,
                                         std::shared_ptr<FieldPresentation> k) {
  if (p.level != k->level + 1)
    throw MalformedName("materialize_poly: level does not sit over the presentation");
  DiffPoly out;
  for (const auto& [m, c] : p.terms) {
    auto v = evaluate_name(c, k);
    if (!v) return std::nullopt;
    if (k->is_zero(*v)) continue;
    DiffPoly t = poly_term(*v, m);
    out = poly_add(*k, out, t);
  }
  return out;
}

}  // namespace limitcopy
