#include "limitcopy/common.hpp"

namespace limitcopy {

Index pair_index(const Index& a, const Index& b) {
  Index s = a + b;
  return s * (s + 1) / 2 + a;
}

void unpair_index(const Index& z, Index& a, Index& b) {
  // Largest w with w(w+1)/2 <= z.
  Index w = boost::multiprecision::sqrt(Index(z * 8 + 1));
  w = (w - 1) / 2;
  while (w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  Index t = w * (w + 1) / 2;
  a = z - t;
  b = w - a;
}

Index seq_encode(const std::vector<Index>& xs) {
  Index code = 0;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
    code = pair_index(*it, code) + 1;
  }
  return code;
}

std::vector<Index> seq_decode(Index z) {
  std::vector<Index> out;
  while (z != 0) {
    Index head, tail;
    unpair_index(z - 1, head, tail);
    out.push_back(head);
    z = tail;
  }
  return out;
}

}  // namespace limitcopy
