#pragma once

#include <functional>
#include <vector>

#include "margulis/orbit_data.hpp"

namespace margulis {

/// Point of the recurrent phase space presented as (frame, neutralised
/// value): the phase-point view is (point, nu(frame)).
struct NeutralizedPoint {
  Frame frame;
  Vec3 point;

  PhasePoint phase() const { return {point, nu(frame)}; }
};

/// Transport by an affine isometry: the frame by the linear part, the
/// neutralised value by the full map.
NeutralizedPoint transform(const AffineIsometry& f, const NeutralizedPoint& z);

/// Affine flow by t; the frame moves by the hyperbolic time t/f_avg.
NeutralizedPoint flow(const NeutralizedPoint& z, double t, double f_avg);

/// Exact neutralised point of a closed orbit at hyperbolic flow time t,
/// in the constant-orbit-average gauge anchored at the canonical frame.
NeutralizedPoint orbit_point(const OrbitNeutralData& orbit, double t);

struct LeafCoords {
  double s1 = 0.0;
  double s2 = 0.0;
};

/// Leaf through Z: (N + s1 nu^±, nu + s2 nu^±) with sections taken at
/// Z.frame.
PhasePoint leaf_point(const NeutralizedPoint& z, Sign sign, LeafCoords c);

/// Inverse of leaf_point. Throws NotOnLeafError when the residual transverse
/// to the limit direction exceeds tol in either slot.
LeafCoords leaf_lift(const NeutralizedPoint& z, const PhasePoint& w, Sign sign,
                     double tol = 1e-8);

/// Unit spacelike direction attached to a transverse endpoint pair:
/// cross(xi_minus, xi_plus) / <xi_minus, xi_plus>. Scale invariant in each
/// argument.
Vec3 nu_of_pair(const Vec3& xi_minus, const Vec3& xi_plus);

struct ChartTriple {
  Vec3 xi_minus;
  Vec3 xi_plus;
  double tau = 0.0;
};

/// Product chart at a reference point: target endpoints plus the pairing of
/// the neutralised offset against nu(g^-, h^+). The pairing coordinate tau
/// is the flow-time coordinate: it shifts by exactly t along the flow.
ChartTriple chart_forward(const NeutralizedPoint& zref,
                          const NeutralizedPoint& w);

/// Flow-invariant projection of W's neutralised value onto the tau = 0 slice
/// of the chart at zref: N(h) - <N(h) - N(g), nu(g^-, h^+)> nu(h).
Vec3 neutral_projection(const NeutralizedPoint& zref,
                        const NeutralizedPoint& w);

/// Supplies a neutralised point on the flow line with the given endpoints.
using NeutralResolver =
    std::function<NeutralizedPoint(const Vec3& xi_minus, const Vec3& xi_plus)>;

/// Inverse chart: flow-invariant projection of the resolved point, shifted
/// by tau along the neutral direction.
PhasePoint chart_inverse(const NeutralizedPoint& zref, const ChartTriple& t,
                         const NeutralResolver& resolver);

/// Resolver backed by enumerated closed orbits; endpoint pairs must match an
/// enumerated orbit within match_tol (angular).
NeutralResolver orbit_table_resolver(std::vector<OrbitNeutralData> orbits,
                                     double match_tol = 1e-7);

/// Resolver backed by the documented heuristic; exact on enumerated periodic
/// orbits only.
NeutralResolver heuristic_resolver(const SchottkyGroup& group, int word_depth);

/// det[(N1 - N2), nu1, nu2]; vanishes across central-stable pairs and is
/// invariant under the flow and the group action.
double F_det(const PhasePoint& a, const PhasePoint& b);
double F_det(const NeutralizedPoint& a, const NeutralizedPoint& b);

/// Coefficients of x in the frame basis {nu, nu+, nu-}; with <nu+,nu-> = -1
/// the limit coefficients are -<x,nu-> and -<x,nu+>.
std::array<double, 3> frame_coordinates(const Frame& g, const Vec3& x);

/// Euclidean norm of the six coefficients of (w_base, w_dir) in the adapted
/// basis {(nu,0),(nu+,0),(nu-,0),(0,nu),(0,nu+),(0,nu-)} at Z.frame.
double adapted_norm(const NeutralizedPoint& z, const Vec3& w_base,
                    const Vec3& w_dir);

/// Adapted-norm ratio of a leaf displacement after flowing by affine time
/// t >= 0: sqrt((s1+t s2)^2 + s2^2) e^{-t/f_avg} / sqrt(s1^2 + s2^2).
double contraction_factor(const OrbitNeutralData& orbit, LeafCoords c,
                          double t);

/// Pointwise envelope sqrt(2) (1+t) e^{-t/f_avg} dominating the factor.
double contraction_envelope(const OrbitNeutralData& orbit, double t);

/// Smallest T with envelope(T) <= 1/2 past the envelope's peak; the factor
/// stays at or below 1/2 for all t >= T.
double half_contraction_time(const OrbitNeutralData& orbit);

}  // namespace margulis
