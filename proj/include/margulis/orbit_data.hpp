#pragma once

#include <string>
#include <vector>

#include "margulis/schottky.hpp"

namespace margulis {

/// Oriented affine line with unit spacelike direction. Two lines are equal
/// when the directions agree and the bases differ along the direction.
struct SpacelikeLine {
  Vec3 base;
  Vec3 dir;
};

/// Residual of l2 against l1 as an oriented-line value: direction mismatch
/// plus the component of the base offset transverse to the direction.
double line_residual(const SpacelikeLine& a, const SpacelikeLine& b);

/// Unit spacelike fixed vector of a hyperbolic isometry, oriented so the
/// frame whose forward endpoint is the attracting ray has this neutral
/// vector.
Vec3 neutral_direction(const LinearIsometry& h, double tol = kDefaultTol);

/// Signed translation of the invariant spacelike line along its neutral
/// direction: <translation part, neutral direction>.
double margulis_invariant(const AffineIsometry& g, double tol = kDefaultTol);

/// The unique invariant affine line of a hyperbolic affine isometry, solved
/// in the eigenbasis on the complement of the neutral direction.
SpacelikeLine invariant_axis(const AffineIsometry& g, double tol = kDefaultTol);

/// Closed-orbit data: Margulis invariant alpha, translation length ell,
/// orbit average f_avg = alpha/ell, the invariant axis and the fixed rays.
struct OrbitNeutralData {
  Word word;
  SpacelikeLine axis_line;
  double alpha = 0.0;
  double ell = 0.0;
  double f_avg = 0.0;
  Vec3 attracting;
  Vec3 repelling;
};

OrbitNeutralData orbit_neutral_data(const SchottkyGroup& group, const Word& w);

std::vector<OrbitNeutralData> all_orbit_data(const SchottkyGroup& group,
                                             int max_len);

enum class SignUniformity { AllPositive, AllNegative, Mixed, Degenerate };

std::string to_string(SignUniformity s);

struct PropernessRow {
  Word word;
  double alpha = 0.0;
  double ell = 0.0;
  double f_avg = 0.0;
};

struct PropernessReport {
  SignUniformity verdict = SignUniformity::Degenerate;
  std::vector<PropernessRow> rows;
};

/// Sign survey of alpha/ell over all conjugacy classes up to max_len. Mixed
/// signs rule out a globally positive speed function for this orientation;
/// this is a diagnostic, not a properness proof.
PropernessReport properness_sign_diagnostic(const SchottkyGroup& group,
                                            int max_len,
                                            double zero_tol = 1e-12);

/// Heuristic neutralised value at a recurrent frame: picks the enumerated
/// closed orbit with the nearest endpoint pair, recovers the flow time of g
/// against that orbit, and reads the axis point at that time. Exact when g
/// lies on an enumerated periodic orbit; no convergence guarantee elsewhere.
PhasePoint approximate_neutral_point(const SchottkyGroup& group,
                                     const Frame& g, int word_depth);

/// Flow time of the frame g along the orbit with the given normalized
/// repelling representative (from normalized_endpoint_pair).
double orbit_flow_time(const Frame& g, const Vec3& n_minus);

}  // namespace margulis
