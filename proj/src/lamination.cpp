#include "margulis/lamination.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "margulis/errors.hpp"

namespace margulis {

NeutralizedPoint transform(const AffineIsometry& f, const NeutralizedPoint& z) {
  return {left_mul(f.linear, z.frame), f(z.point)};
}

NeutralizedPoint flow(const NeutralizedPoint& z, double t, double f_avg) {
  return {geodesic_flow(z.frame, t / f_avg), z.point + t * nu(z.frame)};
}

NeutralizedPoint orbit_point(const OrbitNeutralData& orbit, double t) {
  Frame frame = frame_from_endpoints(orbit.repelling, orbit.attracting, t);
  const Vec3 value =
      orbit.axis_line.base + (orbit.f_avg * t) * orbit.axis_line.dir;
  return {frame, value};
}

PhasePoint leaf_point(const NeutralizedPoint& z, Sign sign, LeafCoords c) {
  const Vec3 limit = nu_limit(z.frame, sign);
  return {z.point + c.s1 * limit, nu(z.frame) + c.s2 * limit};
}

LeafCoords leaf_lift(const NeutralizedPoint& z, const PhasePoint& w, Sign sign,
                     double tol) {
  const Vec3 limit = nu_limit(z.frame, sign);
  const Vec3 other = nu_limit(z.frame, sign == Sign::Plus ? Sign::Minus
                                                          : Sign::Plus);
  const double pairing = inner(limit, other);  // -1 for a valid frame
  const Vec3 db = w.point - z.point;
  const Vec3 dd = w.dir - nu(z.frame);
  const double s1 = inner(db, other) / pairing;
  const double s2 = inner(dd, other) / pairing;
  const double residual =
      std::max(max_abs(db - s1 * limit), max_abs(dd - s2 * limit));
  if (residual > tol)
    throw NotOnLeafError("point is off the leaf, residual " +
                             std::to_string(residual),
                         residual);
  return {s1, s2};
}

Vec3 nu_of_pair(const Vec3& xi_minus, const Vec3& xi_plus) {
  const double pairing = inner(xi_minus, xi_plus);
  const double scale = norm_e(xi_minus) * norm_e(xi_plus);
  if (std::fabs(pairing) <= 1e-12 * scale)
    throw DegeneratePairError("endpoint rays coincide");
  return cross(xi_minus, xi_plus) / pairing;
}

ChartTriple chart_forward(const NeutralizedPoint& zref,
                          const NeutralizedPoint& w) {
  ChartTriple triple;
  triple.xi_minus = boundary_ray(w.frame, Sign::Minus);
  triple.xi_plus = boundary_ray(w.frame, Sign::Plus);
  const Vec3 transverse =
      nu_of_pair(boundary_ray(zref.frame, Sign::Minus), triple.xi_plus);
  triple.tau = inner(w.point - zref.point, transverse);
  return triple;
}

Vec3 neutral_projection(const NeutralizedPoint& zref,
                        const NeutralizedPoint& w) {
  const Vec3 transverse = nu_of_pair(boundary_ray(zref.frame, Sign::Minus),
                                     boundary_ray(w.frame, Sign::Plus));
  return w.point - inner(w.point - zref.point, transverse) * nu(w.frame);
}

PhasePoint chart_inverse(const NeutralizedPoint& zref, const ChartTriple& t,
                         const NeutralResolver& resolver) {
  const NeutralizedPoint resolved = resolver(t.xi_minus, t.xi_plus);
  const Vec3 transverse =
      nu_of_pair(boundary_ray(zref.frame, Sign::Minus), t.xi_plus);
  const Vec3 direction = nu(resolved.frame);
  const Vec3 projected =
      resolved.point -
      inner(resolved.point - zref.point, transverse) * direction;
  return {projected + t.tau * direction, direction};
}

NeutralResolver orbit_table_resolver(std::vector<OrbitNeutralData> orbits,
                                     double match_tol) {
  return [orbits = std::move(orbits), match_tol](
             const Vec3& xi_minus, const Vec3& xi_plus) -> NeutralizedPoint {
    const OrbitNeutralData* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& orbit : orbits) {
      const double d = ray_angular_distance(xi_minus, orbit.repelling) +
                       ray_angular_distance(xi_plus, orbit.attracting);
      if (d < best_dist) {
        best_dist = d;
        best = &orbit;
      }
    }
    if (best == nullptr || best_dist > match_tol)
      throw NoOrbitFoundError(
          "no enumerated orbit matches the requested endpoints");
    return orbit_point(*best, 0.0);
  };
}

NeutralResolver heuristic_resolver(const SchottkyGroup& group,
                                   int word_depth) {
  return [&group, word_depth](const Vec3& xi_minus,
                              const Vec3& xi_plus) -> NeutralizedPoint {
    Frame frame = frame_from_endpoints(xi_minus, xi_plus, 0.0);
    const PhasePoint approx =
        approximate_neutral_point(group, frame, word_depth);
    return {frame, approx.point};
  };
}

double F_det(const PhasePoint& a, const PhasePoint& b) {
  return det3(a.point - b.point, a.dir, b.dir);
}

double F_det(const NeutralizedPoint& a, const NeutralizedPoint& b) {
  return F_det(a.phase(), b.phase());
}

std::array<double, 3> frame_coordinates(const Frame& g, const Vec3& x) {
  return {inner(x, nu(g)), -inner(x, nu_minus(g)), -inner(x, nu_plus(g))};
}

double adapted_norm(const NeutralizedPoint& z, const Vec3& w_base,
                    const Vec3& w_dir) {
  const auto cb = frame_coordinates(z.frame, w_base);
  const auto cd = frame_coordinates(z.frame, w_dir);
  double sum = 0.0;
  for (double c : cb) sum += c * c;
  for (double c : cd) sum += c * c;
  return std::sqrt(sum);
}

double contraction_factor(const OrbitNeutralData& orbit, LeafCoords c,
                          double t) {
  const double before = std::sqrt(c.s1 * c.s1 + c.s2 * c.s2);
  if (before == 0.0)
    throw ZeroDisplacementError("leaf displacement is zero");
  const double drifted = c.s1 + t * c.s2;
  const double after = std::sqrt(drifted * drifted + c.s2 * c.s2) *
                       std::exp(-t / orbit.f_avg);
  return after / before;
}

double contraction_envelope(const OrbitNeutralData& orbit, double t) {
  return std::sqrt(2.0) * (1.0 + t) * std::exp(-t / orbit.f_avg);
}

double half_contraction_time(const OrbitNeutralData& orbit) {
  double lo = std::max(0.0, orbit.f_avg - 1.0);
  if (contraction_envelope(orbit, lo) <= 0.5) return lo;
  double hi = lo + 1.0;
  while (contraction_envelope(orbit, hi) > 0.5) hi += hi - lo;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (contraction_envelope(orbit, mid) > 0.5)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace margulis
