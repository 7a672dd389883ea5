#pragma once

#include <vector>

#include "margulis/lamination.hpp"

namespace margulis {

/// Affine null plane {Y : <Y - base, normal> = 0}, stored by its future null
/// normal rescaled to third coordinate 1. The underlying vector space is the
/// orthogonal complement of the normal, which contains the normal itself.
struct NullPlane {
  Vec3 base;
  Vec3 normal;
};

/// Validates that normal_rep is future null within tol and rescales it.
NullPlane make_null_plane(const Vec3& base, const Vec3& normal_rep,
                          double tol = kDefaultTol);

/// Signed plane equation <p - plane.base, plane.normal>.
double plane_offset(const NullPlane& plane, const Vec3& p);

/// True iff the underlying vector spaces differ, i.e. the normals are
/// non-parallel beyond tol in the circle chart.
bool is_transverse(const NullPlane& p1, const NullPlane& p2,
                   double tol = kDefaultTol);

struct TransversePair {
  NullPlane p1;
  NullPlane p2;
};

TransversePair make_transverse_pair(const NullPlane& p1, const NullPlane& p2,
                                    double tol = kDefaultTol);

NullPlane apply(const AffineIsometry& f, const NullPlane& p);
TransversePair apply(const AffineIsometry& f, const TransversePair& pair);

/// Distance between two planes as values: normal mismatch plus the offset of
/// one base against the other plane.
double plane_residual(const NullPlane& a, const NullPlane& b);

/// Unit spacelike generator of V(P1) ∩ V(P2), oriented so det[n1, v, n2]
/// matches the orientation of the reference triple (v0+, v0, v0-).
/// Antisymmetric under swapping the planes.
Vec3 intersection_direction(const TransversePair& pair);

/// The two future null directions orthogonal to a unit spacelike v, ordered
/// by the same reference orientation. first = v^+, second = v^-.
std::pair<Vec3, Vec3> orthogonal_null_pair(const Vec3& v);

/// Phase point to the pair of null planes through it spanned by (v, v^+) and
/// (v, v^-); invariant along the affine flow.
TransversePair iota(const PhasePoint& p);

/// Transverse pair to the oriented spacelike line it cuts out: direction
/// from intersection_direction, base the minimum-norm solution of the two
/// plane equations. Inverse of iota on oriented lines.
SpacelikeLine iota_prime(const TransversePair& pair);

/// True iff F maps the plane into itself: F(base) stays on the plane and the
/// linear part preserves the normal ray.
bool stabilizer_membership(const NullPlane& p, const AffineIsometry& f,
                           double tol = kDefaultTol);

/// Element of the affine group mapping pair1 to pair2 plane-wise, built from
/// the canonical frames of the two cut-out lines; verified internally.
AffineIsometry open_orbit_witness(const TransversePair& pair1,
                                  const TransversePair& pair2);

struct AnosovSample {
  double t = 0.0;
  double norm = 0.0;
};

struct AnosovFitReport {
  Word word;
  double amplitude = 0.0;   // fitted A
  double rate = 0.0;        // fitted c
  double rate_bound = 0.0;  // 1 / (2 c1_hat)
  double envelope_excess = 0.0;
  double base_line_residual = 0.0;
  bool pass = false;
  std::vector<AnosovSample> samples;
};

/// Transports a unit fiber vector of the pulled-back positive bundle along
/// the closed orbit, records adapted-norm decay on the grid, fits
/// A e^{-c t}, and compares the rate against the envelope bound
/// 1/(2 c1_hat) within fit_tol.
AnosovFitReport anosov_bundle_check(const OrbitNeutralData& orbit,
                                    const std::vector<double>& t_grid,
                                    double c1_hat, double fit_tol = 0.05);

}  // namespace margulis
