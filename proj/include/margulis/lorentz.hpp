#pragma once

#include <array>
#include <cmath>
#include <string>

namespace margulis {

inline constexpr double kDefaultTol = 1e-9;

/// Vector in R^{2,1}, coordinates in the basis where the form is diag(1,1,-1).
struct Vec3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
  }
  Vec3 operator-() const { return {-x1, -x2, -x3}; }
  friend Vec3 operator*(double s, const Vec3& v) {
    return {s * v.x1, s * v.x2, s * v.x3};
  }
  friend Vec3 operator/(const Vec3& v, double s) {
    return {v.x1 / s, v.x2 / s, v.x3 / s};
  }
  Vec3& operator+=(const Vec3& o) {
    x1 += o.x1;
    x2 += o.x2;
    x3 += o.x3;
    return *this;
  }
};

/// Minkowski pairing u1 v1 + u2 v2 - u3 v3.
inline double inner(const Vec3& u, const Vec3& v) {
  return u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3;
}

/// Lorentzian cross product; pairs with det3 via <u, cross(v,w)> = det3(u,v,w).
inline Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u.x2 * v.x3 - u.x3 * v.x2,
          u.x3 * v.x1 - u.x1 * v.x3,
          u.x2 * v.x1 - u.x1 * v.x2};
}

/// Determinant of the matrix with columns u, v, w (cofactor expansion,
/// independent of the cross-product route).
double det3(const Vec3& u, const Vec3& v, const Vec3& w);

// Euclidean helpers, used for tolerances and plotting only.
inline double dot_e(const Vec3& u, const Vec3& v) {
  return u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3;
}
inline double norm_e(const Vec3& v) { return std::sqrt(dot_e(v, v)); }
inline double max_abs(const Vec3& v) {
  return std::max({std::fabs(v.x1), std::fabs(v.x2), std::fabs(v.x3)});
}

enum class CausalClass { Spacelike, Timelike, Null, Zero };

std::string to_string(CausalClass c);

/// Classification by the sign of <v,v>. The tolerance is absolute: null
/// vectors of any magnitude must classify as null.
CausalClass causal_class(const Vec3& v, double tol = kDefaultTol);

/// Dense 3x3 real matrix, row major.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static Mat3 identity();

  double& at(int r, int c) { return m[r][c]; }
  double at(int r, int c) const { return m[r][c]; }

  Vec3 col(int j) const { return {m[0][j], m[1][j], m[2][j]}; }
  void set_col(int j, const Vec3& v) {
    m[0][j] = v.x1;
    m[1][j] = v.x2;
    m[2][j] = v.x3;
  }

  Mat3 transpose() const;
  double trace() const { return m[0][0] + m[1][1] + m[2][2]; }
  double det() const;
  double max_abs() const;

  friend Mat3 operator*(const Mat3& a, const Mat3& b);
  friend Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a.m[0][0] * v.x1 + a.m[0][1] * v.x2 + a.m[0][2] * v.x3,
            a.m[1][0] * v.x1 + a.m[1][1] * v.x2 + a.m[1][2] * v.x3,
            a.m[2][0] * v.x1 + a.m[2][1] * v.x2 + a.m[2][2] * v.x3};
  }
  friend Mat3 operator-(const Mat3& a, const Mat3& b);
};

}  // namespace margulis
