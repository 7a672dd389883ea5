#pragma once

#include "margulis/isometry.hpp"
#include "margulis/rng.hpp"

namespace margulis {

inline Vec3 random_vec(Rng& rng, double mag = 1.0) {
  return {rng.symmetric(mag), rng.symmetric(mag), rng.symmetric(mag)};
}

/// Haar-ish sample of the isometry group via the elliptic/boost/elliptic
/// decomposition; boost magnitude capped to keep residual scales tame.
inline LinearIsometry random_linear(Rng& rng, double boost_mag = 2.0) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  return rotation(rng.uniform(0.0, two_pi)) * boost(rng.symmetric(boost_mag)) *
         rotation(rng.uniform(0.0, two_pi));
}

inline AffineIsometry random_affine(Rng& rng, double trans_mag = 1.0,
                                    double boost_mag = 2.0) {
  return {random_linear(rng, boost_mag), random_vec(rng, trans_mag)};
}

inline Frame random_frame(Rng& rng, double boost_mag = 2.0) {
  return Frame(random_linear(rng, boost_mag));
}

}  // namespace margulis
