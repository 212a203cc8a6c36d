#include "limitcopy/diffalg/poly.hpp"

#include <sstream>

#include "limitcopy/diffalg/field.hpp"

namespace limitcopy {

namespace {

void trim(Mono& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

// Accumulate coef_id * m into p, dropping zero coefficients.
void add_term(FieldPresentation& k, DiffPoly& p, Mono m, Nat coef_id) {
  if (k.is_zero(coef_id)) return;
  trim(m);
  auto it = p.terms.find(m);
  if (it == p.terms.end()) {
    p.terms.emplace(std::move(m), coef_id);
    return;
  }
  Nat s = k.add(it->second, coef_id);
  if (k.is_zero(s)) p.terms.erase(it);
  else it->second = s;
}

}  // namespace

std::string Rank::str() const {
  std::ostringstream os;
  if (order_infinite) os << "(inf)";
  else os << "(" << order << "," << degree << ")";
  return os.str();
}

Rank rank_of(const DiffPoly& p) {
  if (p.is_zero()) return Rank::infinite();
  Nat ord = 0;
  bool any_var = false;
  for (const auto& [m, c] : p.terms) {
    for (Nat i = 0; i < m.size(); ++i) {
      if (m[i] > 0) {
        any_var = true;
        if (i > ord) ord = i;
      }
    }
  }
  if (!any_var) return {false, 0, 0};  // nonzero constant
  Nat deg = 0;
  for (const auto& [m, c] : p.terms)
    if (m.size() > ord && m[ord] > deg) deg = m[ord];
  return {false, ord, deg};
}

std::optional<Nat> order_of(const DiffPoly& p) {
  if (p.is_zero()) return std::nullopt;
  return rank_of(p).order;
}

DiffPoly poly_zero() { return {}; }

DiffPoly poly_coef(Nat coef_id) {
  DiffPoly p;
  p.terms.emplace(Mono{}, coef_id);
  return p;
}

DiffPoly poly_const(FieldPresentation& k, const Rat& c) {
  if (c == 0) return {};
  return poly_coef(k.from_rational(c));
}

DiffPoly poly_var(FieldPresentation& k, Nat deriv) {
  Mono m(deriv + 1, 0);
  m[deriv] = 1;
  return poly_term(k.one(), std::move(m));
}

DiffPoly poly_term(Nat coef_id, Mono m) {
  trim(m);
  DiffPoly p;
  p.terms.emplace(std::move(m), coef_id);
  return p;
}

DiffPoly poly_add(FieldPresentation& k, const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out = a;
  for (const auto& [m, c] : b.terms) add_term(k, out, m, c);
  return out;
}

DiffPoly poly_neg(FieldPresentation& k, const DiffPoly& a) {
  DiffPoly out;
  for (const auto& [m, c] : a.terms) out.terms.emplace(m, k.neg(c));
  return out;
}

DiffPoly poly_sub(FieldPresentation& k, const DiffPoly& a, const DiffPoly& b) {
  return poly_add(k, a, poly_neg(k, b));
}

DiffPoly poly_mul(FieldPresentation& k, const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      Mono m(std::max(ma.size(), mb.size()), 0);
      for (Nat i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (Nat i = 0; i < mb.size(); ++i) m[i] += mb[i];
      add_term(k, out, std::move(m), k.mul(ca, cb));
    }
  }
  return out;
}

DiffPoly poly_scale(FieldPresentation& k, Nat coef_id, const DiffPoly& a) {
  DiffPoly out;
  for (const auto& [m, c] : a.terms) add_term(k, out, m, k.mul(coef_id, c));
  return out;
}

DiffPoly differentiate(FieldPresentation& k, const DiffPoly& p) {
  DiffPoly out;
  for (const auto& [m, c] : p.terms) {
    Nat dc = k.delta(c);
    if (!k.is_zero(dc)) add_term(k, out, m, dc);
    for (Nat i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      Mono m2 = m;
      m2[i] -= 1;
      if (m2.size() < i + 2) m2.resize(i + 2, 0);
      m2[i + 1] += 1;
      add_term(k, out, std::move(m2), k.mul(c, k.from_rational(Rat(m[i]))));
    }
  }
  return out;
}

bool poly_is_constant(const DiffPoly& p) {
  for (const auto& [m, c] : p.terms)
    if (!m.empty()) return false;
  return true;
}

Nat poly_degree_in(const DiffPoly& p, Nat deriv) {
  Nat deg = 0;
  for (const auto& [m, c] : p.terms)
    if (m.size() > deriv && m[deriv] > deg) deg = m[deriv];
  return deg;
}

std::string poly_key(const DiffPoly& p) {
  std::ostringstream os;
  for (const auto& [m, c] : p.terms) {
    os << "[";
    for (Nat e : m) os << e << ",";
    os << "]" << c << ";";
  }
  return os.str();
}

std::string poly_str(FieldPresentation& k, const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms) {
    if (!first) os << " + ";
    first = false;
    os << k.name_str(c);
    for (Nat i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      os << "*";
      if (i == 0) os << "x";
      else if (i == 1) os << "dx";
      else os << "d" << i << "x";
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

}  // namespace limitcopy
