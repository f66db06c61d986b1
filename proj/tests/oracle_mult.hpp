#pragma once

// Independent cross-check for the canonical radial coefficients of the
// orbital and parametric pipelines, restricted to the parameter-free part.
//
// A field v = f * E with f in Q[x, R] is acted on by time units (1 + T).
// Multiplying f by 1 - theta * x^(l-1) R^j kills the monomial theta x^l R^j
// (for l >= 1) while only touching higher grades, because f = x + higher
// terms once the x coefficient is scaled to one.  Sweeping grades upward
// therefore eliminates every monomial divisible by x except x itself, and
// the surviving pure-R coefficients are exactly the canonical second-level
// radial values.  This uses plain polynomial multiplication and never calls
// the engine's elimination machinery.

#include <map>
#include <utility>

#include "rational.hpp"

namespace oracle {

using hznf::Rat;

// key (l, j) stands for x^l R^j, graded by l + 2j
using Poly = std::map<std::pair<int, int>, Rat>;

inline void drop_above(Poly& f, int max_grade) {
  for (auto it = f.begin(); it != f.end();) {
    if (it->first.first + 2 * it->first.second > max_grade || it->second == 0)
      it = f.erase(it);
    else
      ++it;
  }
}

inline Poly mul(const Poly& a, const Poly& b, int max_grade) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      int l = ma.first + mb.first;
      int j = ma.second + mb.second;
      if (l + 2 * j > max_grade) continue;
      out[{l, j}] += ca * cb;
    }
  }
  drop_above(out, max_grade);
  return out;
}

// Normalizes the x coefficient to one and removes every x^l R^j with l >= 1
// other than x itself.  The caller guarantees a nonzero x coefficient.
inline Poly radial_normal_form(Poly f, int max_grade) {
  drop_above(f, max_grade);
  Rat lead = f[{1, 0}];
  for (auto& [m, c] : f) c /= lead;
  for (int g = 2; g <= max_grade; ++g) {
    for (int l = g; l >= 1; --l) {
      if ((g - l) % 2 != 0) continue;
      int j = (g - l) / 2;
      auto it = f.find({l, j});
      if (it == f.end() || it->second == 0) continue;
      Poly unit;
      unit[{0, 0}] = 1;
      unit[{l - 1, j}] = -it->second;
      f = mul(f, unit, max_grade);
    }
  }
  drop_above(f, max_grade);
  return f;
}

}  // namespace oracle
