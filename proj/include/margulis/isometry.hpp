#pragma once

#include <string>
#include <vector>

#include "margulis/lorentz.hpp"

namespace margulis {

enum class Sign { Plus, Minus };

inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }

/// Element of SO^0(2,1): preserves the form, det 1, preserves time
/// orientation. Invariants are tracked numerically, not enforced per call.
struct LinearIsometry {
  Mat3 m;

  static LinearIsometry identity() { return {Mat3::identity()}; }

  Vec3 operator()(const Vec3& v) const { return m * v; }

  /// Metric transpose; exact inverse on the isometry group.
  LinearIsometry inverse() const;

  /// max entry of |m^T Q m - Q| combined with |det - 1|.
  double isometry_residual() const;

  bool preserves_time_orientation() const { return m.at(2, 2) > 0.0; }

  /// Gram-Schmidt against the Lorentz form, keeping the time column future.
  LinearIsometry renormalized() const;
};

LinearIsometry operator*(const LinearIsometry& a, const LinearIsometry& b);

/// One-parameter subgroups: the geodesic boost a(t), the two horocycle
/// translations u^+/u^-, and the elliptic stabilizer of the base point.
LinearIsometry boost(double t);
LinearIsometry horocycle_plus(double s);
LinearIsometry horocycle_minus(double s);
LinearIsometry horocycle(Sign sign, double s);
LinearIsometry rotation(double theta);

/// Affine transformation (linear part, translation part).
struct AffineIsometry {
  LinearIsometry linear;
  Vec3 trans;

  static AffineIsometry identity() { return {LinearIsometry::identity(), {}}; }

  Vec3 operator()(const Vec3& p) const { return linear(p) + trans; }
};

/// Semidirect product: (g1, v1)(g2, v2) = (g1 g2, v1 + g1 v2).
AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b);
AffineIsometry invert(const AffineIsometry& f);

/// Point of the unit tangent bundle of affine space: a point and a unit
/// spacelike direction.
struct PhasePoint {
  Vec3 point;
  Vec3 dir;
};

inline PhasePoint affine_flow(const PhasePoint& p, double t) {
  return {p.point + t * p.dir, p.dir};
}

inline PhasePoint apply(const AffineIsometry& f, const PhasePoint& p) {
  return {f(p.point), f.linear(p.dir)};
}

double phase_distance(const PhasePoint& a, const PhasePoint& b);

inline constexpr double kRenormalizeThreshold = 1e-10;

/// Unit tangent frame of the hyperboloid: a linear isometry g, read through
/// base point g e3 and direction g e2. Construction renormalizes when the
/// accumulated drift exceeds kRenormalizeThreshold.
class Frame {
 public:
  explicit Frame(const LinearIsometry& g);
  static Frame identity() { return Frame(LinearIsometry::identity()); }

  const LinearIsometry& iso() const { return g_; }
  Vec3 base_point() const { return g_.m.col(2); }
  Vec3 direction() const { return g_.m.col(1); }

  double validity_residual() const { return g_.isometry_residual(); }

 private:
  LinearIsometry g_;
};

Frame geodesic_flow(const Frame& g, double t);
Frame left_mul(const LinearIsometry& h, const Frame& g);
Frame right_mul(const Frame& g, const LinearIsometry& h);

/// Neutral section g (1,0,0)^t and limit sections g (0,±1/√2,1/√2)^t.
Vec3 nu(const Frame& g);
Vec3 nu_plus(const Frame& g);
Vec3 nu_minus(const Frame& g);
Vec3 nu_limit(const Frame& g, Sign sign);

/// Ideal endpoint of the frame's geodesic: the future null ray of the
/// corresponding limit section, rescaled so the third coordinate is 1.
Vec3 boundary_ray(const Frame& g, Sign sign);

/// Rescale a future null vector to third coordinate 1.
Vec3 normalize_ray(const Vec3& v);
double ray_angle(const Vec3& ray);
Vec3 ray_from_angle(double theta);
double ray_angular_distance(const Vec3& a, const Vec3& b);

struct IdentityResidual {
  std::string name;
  double residual = 0.0;
};

struct SectionIdentityReport {
  std::vector<IdentityResidual> identities;
  double max_residual() const;
};

/// Evaluates the six neutral/limit section identities (flow invariance and
/// scaling, left equivariance, horocycle invariance) at the given arguments.
SectionIdentityReport section_identities_check(const Frame& g,
                                               const LinearIsometry& h,
                                               double t, double s);

}  // namespace margulis
