#include "margulis/isometry.hpp"

#include <cmath>

#include "margulis/errors.hpp"

namespace margulis {

namespace {
const Vec3 kE2{0.0, 1.0, 0.0};
const Vec3 kE3{0.0, 0.0, 1.0};

Mat3 metric_conjugate_transpose(const Mat3& m) {
  // Q m^T Q with Q = diag(1,1,-1): flips the sign of the off 2x1 blocks.
  Mat3 r = m.transpose();
  r.at(0, 2) = -r.at(0, 2);
  r.at(1, 2) = -r.at(1, 2);
  r.at(2, 0) = -r.at(2, 0);
  r.at(2, 1) = -r.at(2, 1);
  return r;
}
}  // namespace

LinearIsometry LinearIsometry::inverse() const {
  return {metric_conjugate_transpose(m)};
}

double LinearIsometry::isometry_residual() const {
  const Mat3 gram = metric_conjugate_transpose(m) * m;
  const double ortho = (gram - Mat3::identity()).max_abs();
  return std::max(ortho, std::fabs(m.det() - 1.0));
}

LinearIsometry LinearIsometry::renormalized() const {
  Vec3 b = m.col(2);
  b = b / std::sqrt(-inner(b, b));
  if (b.x3 < 0.0) b = -b;
  Vec3 d = m.col(1) + inner(m.col(1), b) * b;
  d = d / std::sqrt(inner(d, d));
  Mat3 r;
  r.set_col(0, cross(d, b));
  r.set_col(1, d);
  r.set_col(2, b);
  return {r};
}

LinearIsometry operator*(const LinearIsometry& a, const LinearIsometry& b) {
  return {a.m * b.m};
}

LinearIsometry boost(double t) {
  const double c = std::cosh(t), s = std::sinh(t);
  LinearIsometry r = LinearIsometry::identity();
  r.m.at(1, 1) = c;
  r.m.at(1, 2) = s;
  r.m.at(2, 1) = s;
  r.m.at(2, 2) = c;
  return r;
}

LinearIsometry horocycle_plus(double t) {
  LinearIsometry r;
  r.m.m = {{{1.0, -2.0 * t, 2.0 * t},
            {2.0 * t, 1.0 - 2.0 * t * t, 2.0 * t * t},
            {2.0 * t, -2.0 * t * t, 1.0 + 2.0 * t * t}}};
  return r;
}

LinearIsometry horocycle_minus(double t) {
  LinearIsometry r;
  r.m.m = {{{1.0, 2.0 * t, 2.0 * t},
            {-2.0 * t, 1.0 - 2.0 * t * t, -2.0 * t * t},
            {2.0 * t, 2.0 * t * t, 1.0 + 2.0 * t * t}}};
  return r;
}

LinearIsometry horocycle(Sign sign, double s) {
  return sign == Sign::Plus ? horocycle_plus(s) : horocycle_minus(s);
}

LinearIsometry rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  LinearIsometry r = LinearIsometry::identity();
  r.m.at(0, 0) = c;
  r.m.at(0, 1) = -s;
  r.m.at(1, 0) = s;
  r.m.at(1, 1) = c;
  return r;
}

AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b) {
  return {a.linear * b.linear, a.trans + a.linear(b.trans)};
}

AffineIsometry invert(const AffineIsometry& f) {
  const LinearIsometry inv = f.linear.inverse();
  return {inv, -inv(f.trans)};
}

double phase_distance(const PhasePoint& a, const PhasePoint& b) {
  const Vec3 dp = a.point - b.point;
  const Vec3 dd = a.dir - b.dir;
  return std::sqrt(dot_e(dp, dp) + dot_e(dd, dd));
}

Frame::Frame(const LinearIsometry& g) : g_(g) {
  // The Gram residual of an exact isometry with entries of size s is
  // measured only to ~s^2 ulps, so the drift threshold scales with s^2.
  const double scale = std::max(1.0, g_.m.max_abs());
  if (g_.isometry_residual() > kRenormalizeThreshold * scale * scale)
    g_ = g_.renormalized();
}

Frame geodesic_flow(const Frame& g, double t) {
  return Frame(g.iso() * boost(t));
}

Frame left_mul(const LinearIsometry& h, const Frame& g) {
  return Frame(h * g.iso());
}

Frame right_mul(const Frame& g, const LinearIsometry& h) {
  return Frame(g.iso() * h);
}

Vec3 nu(const Frame& g) { return g.iso().m.col(0); }

Vec3 nu_plus(const Frame& g) {
  const double r = 1.0 / std::sqrt(2.0);
  return g.iso()(Vec3{0.0, r, r});
}

Vec3 nu_minus(const Frame& g) {
  const double r = 1.0 / std::sqrt(2.0);
  return g.iso()(Vec3{0.0, -r, r});
}

Vec3 nu_limit(const Frame& g, Sign sign) {
  return sign == Sign::Plus ? nu_plus(g) : nu_minus(g);
}

Vec3 normalize_ray(const Vec3& v) {
  if (!(v.x3 > 0.0))
    throw DegenerateEndpointsError("ray is not future pointing");
  return v / v.x3;
}

Vec3 boundary_ray(const Frame& g, Sign sign) {
  return normalize_ray(nu_limit(g, sign));
}

double ray_angle(const Vec3& ray) { return std::atan2(ray.x2, ray.x1); }

Vec3 ray_from_angle(double theta) {
  return {std::cos(theta), std::sin(theta), 1.0};
}

double ray_angular_distance(const Vec3& a, const Vec3& b) {
  double d = std::fabs(ray_angle(a) - ray_angle(b));
  constexpr double twopi = 6.283185307179586476925286766559;
  while (d > twopi) d -= twopi;
  return std::min(d, twopi - d);
}

double SectionIdentityReport::max_residual() const {
  double r = 0.0;
  for (const auto& id : identities) r = std::max(r, id.residual);
  return r;
}

SectionIdentityReport section_identities_check(const Frame& g,
                                               const LinearIsometry& h,
                                               double t, double s) {
  SectionIdentityReport rep;
  const Frame flowed = geodesic_flow(g, t);
  const Frame hg = left_mul(h, g);

  rep.identities.push_back(
      {"nu-flow-invariance", max_abs(nu(flowed) - nu(g))});
  rep.identities.push_back({"nu-left-equivariance", max_abs(nu(hg) - h(nu(g)))});

  const double scale_p = std::exp(t), scale_m = std::exp(-t);
  double limit_scaling = std::max(max_abs(nu_plus(flowed) - scale_p * nu_plus(g)),
                                  max_abs(nu_minus(flowed) - scale_m * nu_minus(g)));
  rep.identities.push_back({"limit-flow-scaling", limit_scaling});

  double limit_equiv = std::max(max_abs(nu_plus(hg) - h(nu_plus(g))),
                                max_abs(nu_minus(hg) - h(nu_minus(g))));
  rep.identities.push_back({"limit-left-equivariance", limit_equiv});

  rep.identities.push_back(
      {"plus-horocycle-invariance",
       max_abs(nu_plus(right_mul(g, horocycle_plus(s))) - nu_plus(g))});
  rep.identities.push_back(
      {"minus-horocycle-invariance",
       max_abs(nu_minus(right_mul(g, horocycle_minus(s))) - nu_minus(g))});
  return rep;
}

}  // namespace margulis
