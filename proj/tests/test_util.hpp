#pragma once

#include <cmath>

#include "margulis/sampling.hpp"

#define CHECK_VEC_NEAR(a, b, tol) CHECK(margulis::max_abs((a) - (b)) <= (tol))

namespace testutil {

// Permutation-sum determinant, independent of the library's cofactor route.
inline double det_oracle(const margulis::Vec3& u, const margulis::Vec3& v,
                         const margulis::Vec3& w) {
  const double m[3][3] = {{u.x1, v.x1, w.x1},
                          {u.x2, v.x2, w.x2},
                          {u.x3, v.x3, w.x3}};
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                           {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  double sum = 0.0;
  for (int p = 0; p < 6; ++p) {
    const double sign = p < 3 ? 1.0 : -1.0;
    sum += sign * m[0][perms[p][0]] * m[1][perms[p][1]] * m[2][perms[p][2]];
  }
  return sum;
}

inline double mat_diff(const margulis::Mat3& a, const margulis::Mat3& b) {
  return (a - b).max_abs();
}

inline double phase_diff(const margulis::PhasePoint& a,
                         const margulis::PhasePoint& b) {
  return std::max(margulis::max_abs(a.point - b.point),
                  margulis::max_abs(a.dir - b.dir));
}

}  // namespace testutil
