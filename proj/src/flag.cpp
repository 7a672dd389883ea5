#include "margulis/flag.hpp"

#include <cmath>

#include "margulis/errors.hpp"

namespace margulis {

namespace {

// Orientation of the reference triple (v0+, v0, v0-); equals -2.
const double kReferenceOrientation =
    det3(Vec3{0.0, 1.0, 1.0}, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, -1.0, 1.0});

}  // namespace

NullPlane make_null_plane(const Vec3& base, const Vec3& normal_rep,
                          double tol) {
  if (std::fabs(inner(normal_rep, normal_rep)) >
      tol * std::max(1.0, dot_e(normal_rep, normal_rep)))
    throw ValidationError("plane normal is not null");
  return {base, normalize_ray(normal_rep)};
}

double plane_offset(const NullPlane& plane, const Vec3& p) {
  return inner(p - plane.base, plane.normal);
}

bool is_transverse(const NullPlane& p1, const NullPlane& p2, double tol) {
  return ray_angular_distance(p1.normal, p2.normal) > tol;
}

TransversePair make_transverse_pair(const NullPlane& p1, const NullPlane& p2,
                                    double tol) {
  if (!is_transverse(p1, p2, tol))
    throw DegeneratePairError("planes share their underlying vector space");
  return {p1, p2};
}

NullPlane apply(const AffineIsometry& f, const NullPlane& p) {
  return {f(p.base), normalize_ray(f.linear(p.normal))};
}

TransversePair apply(const AffineIsometry& f, const TransversePair& pair) {
  return {apply(f, pair.p1), apply(f, pair.p2)};
}

double plane_residual(const NullPlane& a, const NullPlane& b) {
  return std::max(max_abs(a.normal - b.normal),
                  std::fabs(plane_offset(a, b.base)));
}

Vec3 intersection_direction(const TransversePair& pair) {
  const Vec3& n1 = pair.p1.normal;
  const Vec3& n2 = pair.p2.normal;
  const double pairing = inner(n1, n2);
  if (std::fabs(pairing) <= 1e-12 * norm_e(n1) * norm_e(n2))
    throw DegeneratePairError("planes are not transverse");
  Vec3 v = cross(n1, n2) / std::fabs(pairing);
  if (det3(n1, v, n2) * kReferenceOrientation < 0.0) v = -v;
  return v;
}

std::pair<Vec3, Vec3> orthogonal_null_pair(const Vec3& v) {
  // Complete v to a frame: future unit timelike b orthogonal to v, then the
  // spacelike completion d; the null pair is b ± d.
  Vec3 b = Vec3{0.0, 0.0, 1.0} + v.x3 * v;
  b = b / std::sqrt(-inner(b, b));
  const Vec3 d = cross(b, v);
  return {b + d, b - d};
}

TransversePair iota(const PhasePoint& p) {
  const auto [vp, vm] = orthogonal_null_pair(p.dir);
  return {{p.point, normalize_ray(vp)}, {p.point, normalize_ray(vm)}};
}

SpacelikeLine iota_prime(const TransversePair& pair) {
  const Vec3 v = intersection_direction(pair);
  // Minimum-norm X with <X, n_i> = <base_i, n_i>: rows of the euclidean
  // system are the normals with flipped third coordinate.
  const Vec3 r1{pair.p1.normal.x1, pair.p1.normal.x2, -pair.p1.normal.x3};
  const Vec3 r2{pair.p2.normal.x1, pair.p2.normal.x2, -pair.p2.normal.x3};
  const double c1 = inner(pair.p1.base, pair.p1.normal);
  const double c2 = inner(pair.p2.base, pair.p2.normal);
  const double a11 = dot_e(r1, r1), a12 = dot_e(r1, r2), a22 = dot_e(r2, r2);
  const double det = a11 * a22 - a12 * a12;
  if (std::fabs(det) <= 1e-14 * std::max(1.0, a11 * a22))
    throw SingularSolveError("plane intersection solve is singular");
  const double y1 = (a22 * c1 - a12 * c2) / det;
  const double y2 = (a11 * c2 - a12 * c1) / det;
  return {y1 * r1 + y2 * r2, v};
}

bool stabilizer_membership(const NullPlane& p, const AffineIsometry& f,
                           double tol) {
  const Vec3 image_normal = f.linear(p.normal);
  if (image_normal.x3 <= 0.0) return false;
  if (max_abs(normalize_ray(image_normal) - p.normal) > tol) return false;
  return std::fabs(plane_offset(p, f(p.base))) <= tol;
}

AffineIsometry open_orbit_witness(const TransversePair& pair1,
                                  const TransversePair& pair2) {
  const SpacelikeLine line1 = iota_prime(pair1);
  const SpacelikeLine line2 = iota_prime(pair2);

  // Canonical linear frame of a pair: columns built from the normalized
  // normals, matching the endpoint-frame construction.
  auto canonical = [](const TransversePair& pair) -> LinearIsometry {
    const auto [nm, np] =
        normalized_endpoint_pair(pair.p2.normal, pair.p1.normal);
    const double r = 1.0 / std::sqrt(2.0);
    Mat3 g;
    g.set_col(0, cross(np, nm));
    g.set_col(1, r * (np - nm));
    g.set_col(2, r * (np + nm));
    return LinearIsometry{g};
  };

  const LinearIsometry g = canonical(pair2) * canonical(pair1).inverse();
  const AffineIsometry witness =
      compose(AffineIsometry{LinearIsometry::identity(), line2.base},
              compose(AffineIsometry{g, Vec3{}},
                      invert(AffineIsometry{LinearIsometry::identity(),
                                            line1.base})));

  const TransversePair image = apply(witness, pair1);
  const double residual = std::max(plane_residual(image.p1, pair2.p1),
                                   plane_residual(image.p2, pair2.p2));
  if (residual > 1e-8)
    throw Error("open orbit witness verification failed, residual " +
                std::to_string(residual));
  return witness;
}

AnosovFitReport anosov_bundle_check(const OrbitNeutralData& orbit,
                                    const std::vector<double>& t_grid,
                                    double c1_hat, double fit_tol) {
  if (t_grid.empty()) throw ValidationError("t_grid must be nonempty");
  AnosovFitReport report;
  report.word = orbit.word;
  report.rate_bound = 1.0 / (2.0 * c1_hat);

  // Unit fiber vector in the positive-limit coordinate plane.
  const LeafCoords fiber{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};

  double sum_t = 0.0, sum_tt = 0.0, sum_y = 0.0, sum_ty = 0.0;
  double excess = 0.0;
  for (double t : t_grid) {
    if (t < 0.0) throw ValidationError("t_grid entries must be nonnegative");
    const double norm = contraction_factor(orbit, fiber, t);
    report.samples.push_back({t, norm});
    excess = std::max(excess, norm - contraction_envelope(orbit, t));
    const double y = std::log(norm);
    sum_t += t;
    sum_tt += t * t;
    sum_y += y;
    sum_ty += t * y;
  }
  report.envelope_excess = excess;

  const double n = static_cast<double>(t_grid.size());
  const double denom = n * sum_tt - sum_t * sum_t;
  if (std::fabs(denom) < 1e-14)
    throw SingularSolveError("decay fit needs at least two distinct times");
  const double slope = (n * sum_ty - sum_t * sum_y) / denom;
  const double intercept = (sum_y - slope * sum_t) / n;
  report.rate = -slope;
  report.amplitude = std::exp(intercept);

  // The modeled base line is the orbit axis, unchanged along the flow.
  const NeutralizedPoint z0 = orbit_point(orbit, 0.0);
  const PhasePoint p0 = z0.phase();
  const TransversePair planes0 = iota(p0);
  const TransversePair planes1 = iota(affine_flow(p0, t_grid.back() + 1.0));
  report.base_line_residual =
      std::max(plane_residual(planes0.p1, planes1.p1),
               plane_residual(planes0.p2, planes1.p2));

  report.pass = report.rate > 0.0 &&
                report.rate >= (1.0 - fit_tol) * report.rate_bound &&
                report.envelope_excess <= 1e-9 &&
                report.base_line_residual <= 1e-9;
  return report;
}

}  // namespace margulis
