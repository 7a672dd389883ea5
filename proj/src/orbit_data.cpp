#include "margulis/orbit_data.hpp"

#include <cmath>
#include <limits>

#include "margulis/errors.hpp"

namespace margulis {

double line_residual(const SpacelikeLine& a, const SpacelikeLine& b) {
  const Vec3 offset = b.base - a.base;
  const Vec3 transverse =
      offset - (dot_e(offset, a.dir) / dot_e(a.dir, a.dir)) * a.dir;
  return std::max(max_abs(a.dir - b.dir), max_abs(transverse));
}

Vec3 neutral_direction(const LinearIsometry& h, double tol) {
  const AxisData data = axis(h, tol);
  const auto [nm, np] = normalized_endpoint_pair(data.repelling,
                                                 data.attracting);
  return cross(np, nm);
}

double margulis_invariant(const AffineIsometry& g, double tol) {
  return inner(g.trans, neutral_direction(g.linear, tol));
}

SpacelikeLine invariant_axis(const AffineIsometry& g, double tol) {
  const AxisData data = axis(g.linear, tol);
  const auto [nm, np] = normalized_endpoint_pair(data.repelling,
                                                 data.attracting);
  const Vec3 neutral = cross(np, nm);
  const double alpha = inner(g.trans, neutral);

  const double lp = std::expm1(data.length);    // e^l - 1
  const double lm = std::expm1(-data.length);   // e^-l - 1
  if (std::fabs(lp) < 1e-12 || std::fabs(lm) < 1e-12)
    throw SingularSolveError("axis solve is ill-conditioned");

  // Solve (L - I) p = -(u - alpha nu) on span{n+, n-}. With <n+,n-> = -1 the
  // coefficients of x along n+/n- are -<x,n-> and -<x,n+>.
  const Vec3 u = g.trans - alpha * neutral;
  const double cp = -inner(u, nm);
  const double cm = -inner(u, np);
  const Vec3 p = (-cp / lp) * np + (-cm / lm) * nm;
  return {p, neutral};
}

OrbitNeutralData orbit_neutral_data(const SchottkyGroup& group,
                                    const Word& w) {
  const AffineIsometry g = evaluate(group, w);
  const AxisData data = axis(g.linear);
  OrbitNeutralData orbit;
  orbit.word = w;
  orbit.axis_line = invariant_axis(g);
  orbit.alpha = inner(g.trans, orbit.axis_line.dir);
  orbit.ell = data.length;
  orbit.f_avg = orbit.alpha / orbit.ell;
  orbit.attracting = data.attracting;
  orbit.repelling = data.repelling;
  return orbit;
}

std::vector<OrbitNeutralData> all_orbit_data(const SchottkyGroup& group,
                                             int max_len) {
  std::vector<OrbitNeutralData> out;
  for (const auto& [word, axis_data] : enumerate_closed_orbits(group, max_len))
    out.push_back(orbit_neutral_data(group, word));
  return out;
}

std::string to_string(SignUniformity s) {
  switch (s) {
    case SignUniformity::AllPositive:
      return "all_positive";
    case SignUniformity::AllNegative:
      return "all_negative";
    case SignUniformity::Mixed:
      return "mixed";
    case SignUniformity::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

PropernessReport properness_sign_diagnostic(const SchottkyGroup& group,
                                            int max_len, double zero_tol) {
  PropernessReport report;
  bool any_pos = false, any_neg = false, any_zero = false;
  for (const OrbitNeutralData& orbit : all_orbit_data(group, max_len)) {
    report.rows.push_back({orbit.word, orbit.alpha, orbit.ell, orbit.f_avg});
    if (std::fabs(orbit.alpha) <= zero_tol)
      any_zero = true;
    else if (orbit.alpha > 0.0)
      any_pos = true;
    else
      any_neg = true;
  }
  if (any_zero)
    report.verdict = SignUniformity::Degenerate;
  else if (any_pos && any_neg)
    report.verdict = SignUniformity::Mixed;
  else if (any_pos)
    report.verdict = SignUniformity::AllPositive;
  else if (any_neg)
    report.verdict = SignUniformity::AllNegative;
  return report;
}

double orbit_flow_time(const Frame& g, const Vec3& n_minus) {
  const double pairing = -inner(g.base_point(), n_minus);
  return std::log(std::sqrt(2.0) * pairing);
}

PhasePoint approximate_neutral_point(const SchottkyGroup& group,
                                     const Frame& g, int word_depth) {
  const auto orbits = all_orbit_data(group, word_depth);
  if (orbits.empty()) throw NoOrbitFoundError("no enumerated closed orbits");

  const Vec3 ray_minus = boundary_ray(g, Sign::Minus);
  const Vec3 ray_plus = boundary_ray(g, Sign::Plus);
  const OrbitNeutralData* best = nullptr;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& orbit : orbits) {
    const double d = ray_angular_distance(ray_minus, orbit.repelling) +
                     ray_angular_distance(ray_plus, orbit.attracting);
    if (d < best_dist) {
      best_dist = d;
      best = &orbit;
    }
  }

  const auto [nm, np] =
      normalized_endpoint_pair(best->repelling, best->attracting);
  const double t = orbit_flow_time(g, nm);
  const Vec3 value = best->axis_line.base + (best->f_avg * t) * best->axis_line.dir;
  return {value, nu(g)};
}

}  // namespace margulis
