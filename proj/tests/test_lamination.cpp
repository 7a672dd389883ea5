#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "margulis/config.hpp"
#include "margulis/errors.hpp"
#include "margulis/lamination.hpp"
#include "test_util.hpp"

using namespace margulis;

namespace {

SchottkyGroup preset() { return build_group(preset_config("example2")); }

OrbitNeutralData synthetic_orbit(double f_avg) {
  OrbitNeutralData orbit;
  orbit.axis_line = {Vec3{}, {1, 0, 0}};
  orbit.ell = 1.0;
  orbit.alpha = f_avg;
  orbit.f_avg = f_avg;
  orbit.attracting = {0, 1, 1};
  orbit.repelling = {0, -1, 1};
  return orbit;
}

}  // namespace

TEST_CASE("leaf points") {
  const NeutralizedPoint z{Frame::identity(), Vec3{}};
  CHECK(testutil::phase_diff(leaf_point(z, Sign::Plus, {0, 0}), z.phase()) ==
        0.0);

  const double r = 1.0 / std::sqrt(2.0);
  const PhasePoint p = leaf_point(z, Sign::Plus, {1, 0});
  CHECK_VEC_NEAR(p.point, (Vec3{0, r, r}), 1e-15);
  CHECK_VEC_NEAR(p.dir, (Vec3{1, 0, 0}), 1e-15);

  // Null offsets leave the direction's square norm untouched.
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const NeutralizedPoint zr{random_frame(rng), random_vec(rng)};
    const PhasePoint q =
        leaf_point(zr, Sign::Minus, {rng.symmetric(2.0), rng.symmetric(2.0)});
    CHECK(std::fabs(inner(q.dir, q.dir) - 1.0) <= 1e-9);
  }
}

TEST_CASE("leaf lift inverts leaf point") {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const NeutralizedPoint z{random_frame(rng), random_vec(rng)};
    const Sign sign = rng.unit() < 0.5 ? Sign::Plus : Sign::Minus;
    CHECK(leaf_lift(z, z.phase(), sign).s1 == 0.0);

    const LeafCoords c{rng.symmetric(1.0), rng.symmetric(1.0)};
    const LeafCoords back = leaf_lift(z, leaf_point(z, sign, c), sign);
    CHECK(std::fabs(back.s1 - c.s1) <= 1e-10);
    CHECK(std::fabs(back.s2 - c.s2) <= 1e-10);
  }

  const NeutralizedPoint z{Frame::identity(), Vec3{}};
  PhasePoint off = z.phase();
  off.point += 0.1 * nu(z.frame);
  CHECK_THROWS_AS(leaf_lift(z, off, Sign::Plus), NotOnLeafError);
}

TEST_CASE("transverse direction of an endpoint pair") {
  CHECK_VEC_NEAR(nu_of_pair({0, -1, 1}, {0, 1, 1}), (Vec3{1, 0, 0}), 1e-15);
  CHECK_THROWS_AS(nu_of_pair({0, 1, 1}, {0, 1, 1}), DegeneratePairError);

  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const Vec3 xm = ray_from_angle(rng.uniform(0.0, 6.28));
    const Vec3 xp = ray_from_angle(ray_angle(xm) + rng.uniform(0.3, 3.0));
    const Vec3 v = nu_of_pair(xm, xp);
    CHECK(std::fabs(inner(v, v) - 1.0) <= 1e-10);
    // Degree-zero homogeneity.
    CHECK_VEC_NEAR(
        nu_of_pair(rng.uniform(0.2, 5.0) * xm, rng.uniform(0.2, 5.0) * xp), v,
        1e-10);
  }
}

TEST_CASE("chart forward on reference data") {
  const SchottkyGroup group = preset();
  const auto orbits = all_orbit_data(group, 2);
  const NeutralizedPoint zref = orbit_point(orbits[0], 0.0);

  const ChartTriple self = chart_forward(zref, zref);
  CHECK_VEC_NEAR(self.xi_minus, boundary_ray(zref.frame, Sign::Minus), 1e-12);
  CHECK_VEC_NEAR(self.xi_plus, boundary_ray(zref.frame, Sign::Plus), 1e-12);
  CHECK(std::fabs(self.tau) <= 1e-12);

  // tau is the flow-time coordinate: it shifts by exactly t, while the
  // projection onto the tau = 0 slice is flow invariant.
  const NeutralizedPoint w = orbit_point(orbits[3], 0.4);
  const NeutralizedPoint w_flowed = flow(w, 1.3, orbits[3].f_avg);
  const ChartTriple before = chart_forward(zref, w);
  const ChartTriple after = chart_forward(zref, w_flowed);
  CHECK(std::fabs((after.tau - before.tau) - 1.3) <= 1e-10);
  CHECK_VEC_NEAR(neutral_projection(zref, w_flowed),
                 neutral_projection(zref, w), 1e-10);

  // A point on the positive leaf shares the forward endpoint and has tau 0.
  const Vec3 xi_minus = boundary_ray(w.frame, Sign::Minus);
  const Vec3 xi_plus = boundary_ray(zref.frame, Sign::Plus);
  const Frame companion_frame = frame_from_endpoints(xi_minus, xi_plus, 0.2);
  const NeutralizedPoint companion{
      companion_frame, zref.point + 0.7 * nu_plus(zref.frame)};
  const ChartTriple leaf_triple = chart_forward(zref, companion);
  CHECK(std::fabs(leaf_triple.tau) <= 1e-10);
  CHECK_VEC_NEAR(leaf_triple.xi_plus, xi_plus, 1e-9);
}

TEST_CASE("chart rejects coincident reference and target rays") {
  const SchottkyGroup group = preset();
  const auto orbits = all_orbit_data(group, 1);
  // Reference whose backward ray equals the target's forward ray: the
  // transverse direction degenerates.
  const OrbitNeutralData* ref = nullptr;
  const OrbitNeutralData* bad = nullptr;
  for (const auto& a : orbits)
    for (const auto& b : orbits)
      if (ray_angular_distance(a.repelling, b.attracting) < 1e-9) {
        ref = &a;
        bad = &b;
      }
  REQUIRE(ref != nullptr);
  const NeutralizedPoint zref = orbit_point(*ref, 0.0);
  const NeutralizedPoint w = orbit_point(*bad, 0.0);
  CHECK_THROWS_AS(chart_forward(zref, w), DegeneratePairError);
}

TEST_CASE("chart round trips on periodic data") {
  const SchottkyGroup group = preset();
  const auto orbits = all_orbit_data(group, 2);
  const NeutralResolver resolver = orbit_table_resolver(orbits);
  Rng rng(11);

  for (std::size_t a = 0; a < orbits.size(); ++a) {
    const NeutralizedPoint zref = orbit_point(orbits[a], 0.0);
    // Round trip through the reference point itself.
    const PhasePoint self =
        chart_inverse(zref, chart_forward(zref, zref), resolver);
    CHECK(testutil::phase_diff(self, zref.phase()) <= 1e-10);
    for (std::size_t b = 0; b < orbits.size(); ++b) {
      if (a == b) continue;
      if (ray_angular_distance(orbits[a].repelling, orbits[b].attracting) <
          1e-3)
        continue;

      const NeutralizedPoint w = orbit_point(orbits[b], rng.symmetric(1.0));
      const PhasePoint back =
          chart_inverse(zref, chart_forward(zref, w), resolver);
      CHECK(testutil::phase_diff(back, w.phase()) <= 1e-8);

      const ChartTriple synth{orbits[b].repelling, orbits[b].attracting,
                              rng.symmetric(2.0)};
      const PhasePoint realized = chart_inverse(zref, synth, resolver);
      const NeutralizedPoint realized_z{
          resolver(synth.xi_minus, synth.xi_plus).frame, realized.point};
      const ChartTriple round = chart_forward(zref, realized_z);
      CHECK(max_abs(round.xi_minus - synth.xi_minus) <= 1e-8);
      CHECK(max_abs(round.xi_plus - synth.xi_plus) <= 1e-8);
      CHECK(std::fabs(round.tau - synth.tau) <= 1e-8);

      // Shifting tau moves the output along the neutral direction.
      ChartTriple shifted = synth;
      shifted.tau += 0.37;
      const PhasePoint moved = chart_inverse(zref, shifted, resolver);
      CHECK_VEC_NEAR(moved.point, realized.point + 0.37 * realized.dir, 1e-10);
    }
  }
}

TEST_CASE("chart consistency across overlapping references") {
  const SchottkyGroup group = preset();
  const auto orbits = all_orbit_data(group, 2);
  Rng rng(13);
  // Two points with equal forward endpoint and equal tau under one chart
  // project equally under any other admissible chart.
  for (int i = 0; i < 50; ++i) {
    const auto& ga = orbits[rng.uniform_int(0, static_cast<int>(orbits.size()) - 1)];
    const auto& gb = orbits[rng.uniform_int(0, static_cast<int>(orbits.size()) - 1)];
    const auto& hb = orbits[rng.uniform_int(0, static_cast<int>(orbits.size()) - 1)];
    const NeutralizedPoint z1 = orbit_point(ga, 0.0);
    const NeutralizedPoint z2 = orbit_point(gb, 0.0);
    const NeutralizedPoint w1 = orbit_point(hb, rng.symmetric(0.5));
    if (ray_angular_distance(ga.repelling, hb.attracting) < 1e-3) continue;
    if (ray_angular_distance(gb.repelling, hb.attracting) < 1e-3) continue;

    // Companion on the positive leaf of w1: same forward ray, same tau.
    const NeutralizedPoint w2{
        w1.frame, w1.point + rng.symmetric(1.0) * nu_plus(w1.frame)};
    const ChartTriple t1a = chart_forward(z1, w1);
    const ChartTriple t1b = chart_forward(z1, w2);
    REQUIRE(max_abs(t1a.xi_plus - t1b.xi_plus) <= 1e-10);
    REQUIRE(std::fabs(t1a.tau - t1b.tau) <= 1e-7);
    const ChartTriple t2a = chart_forward(z2, w1);
    const ChartTriple t2b = chart_forward(z2, w2);
    CHECK(max_abs(t2a.xi_plus - t2b.xi_plus) <= 1e-10);
    CHECK(std::fabs(t2a.tau - t2b.tau) <= 1e-7);
  }
}

TEST_CASE("determinant diagnostic") {
  const SchottkyGroup group = preset();
  const auto orbits = all_orbit_data(group, 2);
  Rng rng(17);

  const NeutralizedPoint z1 = orbit_point(orbits[0], 0.0);
  CHECK(F_det(z1, z1) == 0.0);

  for (int i = 0; i < 100; ++i) {
    const auto& oa = orbits[rng.uniform_int(0, static_cast<int>(orbits.size()) - 1)];
    const auto& ob = orbits[rng.uniform_int(0, static_cast<int>(orbits.size()) - 1)];
    const NeutralizedPoint za = orbit_point(oa, rng.symmetric(1.0));
    const NeutralizedPoint zb = orbit_point(ob, rng.symmetric(1.0));

    // Central-stable companion of za built on the orbit pair (a, b).
    if (ray_angular_distance(ob.repelling, oa.attracting) > 1e-3) {
      const Frame companion = frame_from_endpoints(
          boundary_ray(zb.frame, Sign::Minus),
          boundary_ray(za.frame, Sign::Plus), rng.symmetric(1.0));
      const NeutralizedPoint w{
          companion, za.point + rng.symmetric(1.0) * nu_plus(za.frame) +
                         rng.symmetric(1.0) * nu(za.frame)};
      CHECK(std::fabs(F_det(za, w)) <= 1e-8);
    }

    // Flow invariance in both slots.
    const double t = rng.uniform(0.0, 2.0);
    CHECK(std::fabs(F_det(flow(za, t, oa.f_avg), flow(zb, t, ob.f_avg)) -
                    F_det(za, zb)) <= 1e-9);

    // Group invariance, normalized by the transformed determinant's term
    // scale (the group element scales the columns by e^4 per letter).
    const AffineIsometry gamma = evaluate(group, Word{{1, 2}});
    const NeutralizedPoint ta = transform(gamma, za);
    const NeutralizedPoint tb = transform(gamma, zb);
    const double term_scale =
        std::max(1.0, max_abs(ta.point - tb.point) *
                          max_abs(nu(ta.frame)) * max_abs(nu(tb.frame)));
    CHECK(std::fabs(F_det(ta, tb) - F_det(za, zb)) / term_scale <= 1e-9);
  }
}

TEST_CASE("adapted norm") {
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    const NeutralizedPoint z{random_frame(rng), random_vec(rng)};
    CHECK(std::fabs(adapted_norm(z, nu_plus(z.frame), Vec3{}) - 1.0) <= 1e-10);
    CHECK(std::fabs(adapted_norm(z, Vec3{}, nu(z.frame)) - 1.0) <= 1e-10);

    const double s1 = rng.symmetric(2.0), s2 = rng.symmetric(2.0);
    CHECK(std::fabs(adapted_norm(z, s1 * nu_plus(z.frame),
                                 s2 * nu_plus(z.frame)) -
                    std::sqrt(s1 * s1 + s2 * s2)) <= 1e-10);

    const AffineIsometry gamma{random_linear(rng), random_vec(rng)};
    const Vec3 wb = random_vec(rng), wd = random_vec(rng);
    CHECK(std::fabs(adapted_norm(transform(gamma, z), gamma.linear(wb),
                                 gamma.linear(wd)) -
                    adapted_norm(z, wb, wd)) <= 1e-10);
  }
}

TEST_CASE("leaf equivariance under flow and group") {
  const SchottkyGroup group = preset();
  const auto orbits = all_orbit_data(group, 2);
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto& orbit = orbits[rng.uniform_int(0, static_cast<int>(orbits.size()) - 1)];
    const NeutralizedPoint z = orbit_point(orbit, rng.symmetric(1.0));
    const LeafCoords c{rng.symmetric(1.0), rng.symmetric(1.0)};
    const double t = rng.uniform(0.0, 2.0);

    // Flowing a leaf point lands on the flowed leaf with drifted
    // coordinates, expressed in the original frame's sections.
    const PhasePoint lhs = affine_flow(leaf_point(z, Sign::Plus, c), t);
    const PhasePoint rhs{
        z.point + t * nu(z.frame) + (c.s1 + t * c.s2) * nu_plus(z.frame),
        nu(z.frame) + c.s2 * nu_plus(z.frame)};
    CHECK(testutil::phase_diff(lhs, rhs) <= 1e-10);
    // In the flowed frame the limit section rescales, so the lifted
    // coordinates contract by e^{-t1}; the contraction mechanism itself.
    const NeutralizedPoint z_flowed = flow(z, t, orbit.f_avg);
    const double shrink = std::exp(-t / orbit.f_avg);
    const LeafCoords lifted = leaf_lift(z_flowed, lhs, Sign::Plus, 1e-6);
    CHECK(std::fabs(lifted.s1 - shrink * (c.s1 + t * c.s2)) <= 1e-9);
    CHECK(std::fabs(lifted.s2 - shrink * c.s2) <= 1e-9);

    const AffineIsometry gamma = evaluate(group, Word{{-2, 1}});
    const PhasePoint moved = apply(gamma, leaf_point(z, Sign::Minus, c));
    CHECK(testutil::phase_diff(moved,
                               leaf_point(transform(gamma, z), Sign::Minus, c)) <=
          1e-10);
  }
}

TEST_CASE("contraction factors") {
  const OrbitNeutralData unit = synthetic_orbit(1.0);
  CHECK(contraction_factor(unit, {1, 0}, 0.0) == 1.0);
  for (double t : {0.3, 1.0, 2.5})
    CHECK(contraction_factor(unit, {1, 0}, t) ==
          doctest::Approx(std::exp(-t)).epsilon(1e-12));
  CHECK_THROWS_AS(contraction_factor(unit, {0, 0}, 1.0),
                  ZeroDisplacementError);

  const OrbitNeutralData quarter = synthetic_orbit(0.25);
  Rng rng(29);
  for (int i = 0; i < 500; ++i) {
    const LeafCoords c{rng.symmetric(1.0), rng.symmetric(1.0)};
    if (std::fabs(c.s1) + std::fabs(c.s2) < 1e-9) continue;
    const double t = rng.uniform(0.0, 8.0);
    CHECK(contraction_factor(quarter, c, t) <=
          contraction_envelope(quarter, t) + 1e-12);
  }

  const double T = half_contraction_time(quarter);
  CHECK(contraction_envelope(quarter, T) <= 0.5 + 1e-9);
  for (double extra : {0.0, 0.5, 2.0, 10.0})
    for (int s1 = -1; s1 <= 1; ++s1)
      for (int s2 = -1; s2 <= 1; ++s2) {
        if (s1 == 0 && s2 == 0) continue;
        CHECK(contraction_factor(quarter,
                                 {static_cast<double>(s1),
                                  static_cast<double>(s2)},
                                 T + extra) <= 0.5 + 1e-9);
      }
}

TEST_CASE("half contraction on preset orbits") {
  const SchottkyGroup group = preset();
  for (const OrbitNeutralData& orbit : all_orbit_data(group, 3)) {
    const double T = half_contraction_time(orbit);
    for (int s1 = -1; s1 <= 1; ++s1)
      for (int s2 = -1; s2 <= 1; ++s2) {
        if (s1 == 0 && s2 == 0) continue;
        const LeafCoords c{static_cast<double>(s1), static_cast<double>(s2)};
        for (double extra : {0.0, 1.0, 4.0})
          CHECK(contraction_factor(orbit, c, T + extra) <= 0.5 + 1e-12);
      }
  }
}
