#include "margulis/lorentz.hpp"

#include <cmath>

namespace margulis {

double det3(const Vec3& u, const Vec3& v, const Vec3& w) {
  return u.x1 * (v.x2 * w.x3 - v.x3 * w.x2) -
         v.x1 * (u.x2 * w.x3 - u.x3 * w.x2) +
         w.x1 * (u.x2 * v.x3 - u.x3 * v.x2);
}

std::string to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike:
      return "spacelike";
    case CausalClass::Timelike:
      return "timelike";
    case CausalClass::Null:
      return "null";
    case CausalClass::Zero:
      return "zero";
  }
  return "unknown";
}

CausalClass causal_class(const Vec3& v, double tol) {
  if (v.x1 == 0.0 && v.x2 == 0.0 && v.x3 == 0.0) return CausalClass::Zero;
  const double k = inner(v, v);
  if (std::fabs(k) <= tol) return CausalClass::Null;
  return k > 0.0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

Mat3 Mat3::identity() {
  Mat3 r;
  r.m = {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
  return r;
}

Mat3 Mat3::transpose() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
  return r;
}

double Mat3::det() const { return det3(col(0), col(1), col(2)); }

double Mat3::max_abs() const {
  double r = 0.0;
  for (const auto& row : m)
    for (double x : row) r = std::max(r, std::fabs(x));
  return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

}  // namespace margulis
