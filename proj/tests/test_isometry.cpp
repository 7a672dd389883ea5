#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "margulis/errors.hpp"
#include "margulis/isometry.hpp"
#include "test_util.hpp"

using namespace margulis;

TEST_CASE("semidirect product composition") {
  const AffineIsometry f{boost(1.3), {0.2, -0.4, 0.7}};
  const AffineIsometry id = AffineIsometry::identity();
  CHECK(testutil::mat_diff(compose(id, f).linear.m, f.linear.m) == 0.0);
  CHECK_VEC_NEAR(compose(id, f).trans, f.trans, 0.0);

  // The boost fixes (1,0,0), so composing with that translation keeps it.
  const AffineIsometry g =
      compose(AffineIsometry{boost(std::log(2.0)), {}},
              AffineIsometry{LinearIsometry::identity(), {1, 0, 0}});
  CHECK(testutil::mat_diff(g.linear.m, boost(std::log(2.0)).m) == 0.0);
  CHECK_VEC_NEAR(g.trans, (Vec3{1, 0, 0}), 1e-15);

  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const AffineIsometry a = random_affine(rng), b = random_affine(rng),
                         c = random_affine(rng);
    const AffineIsometry left = compose(compose(a, b), c);
    const AffineIsometry right = compose(a, compose(b, c));
    CHECK(testutil::mat_diff(left.linear.m, right.linear.m) <= 1e-10);
    CHECK_VEC_NEAR(left.trans, right.trans, 1e-10);
  }
}

TEST_CASE("inversion") {
  const AffineIsometry id = AffineIsometry::identity();
  CHECK(testutil::mat_diff(invert(id).linear.m, id.linear.m) == 0.0);
  CHECK(testutil::mat_diff(invert(AffineIsometry{boost(0.8), {}}).linear.m,
                           boost(-0.8).m) <= 1e-15);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const AffineIsometry f = random_affine(rng);
    const AffineIsometry round = compose(f, invert(f));
    CHECK(testutil::mat_diff(round.linear.m, Mat3::identity()) <= 1e-10);
    CHECK(max_abs(round.trans) <= 1e-10);
  }
}

TEST_CASE("one-parameter subgroup matrices") {
  CHECK(testutil::mat_diff(boost(0.0).m, Mat3::identity()) == 0.0);
  CHECK(testutil::mat_diff(horocycle_plus(0.0).m, Mat3::identity()) == 0.0);

  const Mat3 a = boost(std::log(2.0)).m;  // cosh = 5/4, sinh = 3/4
  CHECK(a.at(1, 1) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(a.at(2, 2) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(a.at(1, 2) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(a.at(2, 1) == doctest::Approx(0.75).epsilon(1e-15));

  Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    const double s = rng.symmetric(3.0), sp = rng.symmetric(3.0);
    CHECK(testutil::mat_diff((horocycle_plus(s) * horocycle_plus(sp)).m,
                             horocycle_plus(s + sp).m) <= 1e-10);
    CHECK(testutil::mat_diff((horocycle_minus(s) * horocycle_minus(sp)).m,
                             horocycle_minus(s + sp).m) <= 1e-10);
    const double t = rng.symmetric(3.0);
    CHECK(testutil::mat_diff((boost(t) * horocycle_plus(s * std::exp(-t))).m,
                             (horocycle_plus(s) * boost(t)).m) <= 1e-10);
  }
}

TEST_CASE("geodesic and affine flows") {
  const Frame e = Frame::identity();
  CHECK(testutil::mat_diff(geodesic_flow(e, 0.0).iso().m, e.iso().m) == 0.0);
  const double t = 1.7;
  CHECK_VEC_NEAR(geodesic_flow(e, t).base_point(),
                 (Vec3{0.0, std::sinh(t), std::cosh(t)}), 1e-15);

  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const Frame g = random_frame(rng);
    const double a = rng.symmetric(2.0), b = rng.symmetric(2.0);
    CHECK(testutil::mat_diff(geodesic_flow(geodesic_flow(g, a), b).iso().m,
                             geodesic_flow(g, a + b).iso().m) <= 1e-10);
  }

  const PhasePoint p{{0, 0, 0}, {1, 0, 0}};
  CHECK(testutil::phase_diff(affine_flow(p, 0.0), p) == 0.0);
  CHECK(testutil::phase_diff(affine_flow(p, 2.0),
                             PhasePoint{{2, 0, 0}, {1, 0, 0}}) == 0.0);
  for (int i = 0; i < 50; ++i) {
    const PhasePoint q{random_vec(rng), random_vec(rng)};
    CHECK_VEC_NEAR(affine_flow(q, rng.symmetric(5.0)).dir, q.dir, 0.0);
  }
}

TEST_CASE("neutral and limit sections") {
  const Frame e = Frame::identity();
  CHECK_VEC_NEAR(nu(e), (Vec3{1, 0, 0}), 0.0);

  const double r = 1.0 / std::sqrt(2.0);
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const double t = rng.symmetric(3.0);
    const Frame at = Frame(boost(t));
    CHECK_VEC_NEAR(nu_plus(at), (std::exp(t) * Vec3{0, r, r}), 1e-12);

    const Frame g = random_frame(rng);
    CHECK(std::fabs(inner(nu(g), nu(g)) - 1.0) <= 1e-9);
    CHECK(std::fabs(inner(nu_plus(g), nu_plus(g))) <= 1e-9);
    CHECK(std::fabs(inner(nu_minus(g), nu_minus(g))) <= 1e-9);
    CHECK(std::fabs(inner(nu_plus(g), nu_minus(g)) + 1.0) <= 1e-9);
  }
}

TEST_CASE("section identities") {
  Rng rng(29);
  for (int i = 0; i < 1000; ++i) {
    const Frame g = random_frame(rng);
    const LinearIsometry h = random_linear(rng);
    const SectionIdentityReport rep =
        section_identities_check(g, h, rng.symmetric(3.0), rng.symmetric(3.0));
    CHECK(rep.max_residual() <= 1e-10);
  }
}

TEST_CASE("horocycle relation for the neutral section") {
  // The coefficients are ratios of inner products whose summands grow like
  // e^{2 t1} t2^2 and cancel, so residuals are normalized by the summed-term
  // scale; at O(1) data this is the plain absolute residual.
  Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const Frame g = random_frame(rng);
    const double t1 = rng.symmetric(3.0), t2 = rng.symmetric(3.0);
    const Frame h = right_mul(right_mul(g, boost(t1)), horocycle_plus(t2));
    const double coeff =
        inner(nu(h), nu_minus(g)) / inner(nu_plus(g), nu_minus(g));
    const Vec3 rhs = nu(g) + coeff * nu_plus(g);
    const double term_gh = max_abs(nu(h)) * max_abs(nu_minus(g));
    const double term_hg = max_abs(nu(g)) * max_abs(nu_minus(h));
    const double scale = std::max({1.0, max_abs(nu(h)), max_abs(rhs), term_gh});
    CHECK(max_abs(nu(h) - rhs) / scale <= 1e-9);
    // Closed form of the coefficient from the construction itself.
    CHECK(coeff == doctest::Approx(2.0 * std::sqrt(2.0) * t2 * std::exp(t1))
                       .epsilon(1e-9));
    // Swapping the roles negates the displayed vector.
    const double coeff_back =
        inner(nu(g), nu_minus(h)) / inner(nu_plus(h), nu_minus(h));
    const Vec3 lhs_vec = coeff_back * nu_plus(h);
    const Vec3 rhs_vec = -coeff * nu_plus(g);
    const double pair_scale = std::max(
        {1.0, max_abs(lhs_vec), max_abs(rhs_vec),
         term_gh * max_abs(nu_plus(g)), term_hg * max_abs(nu_plus(h))});
    CHECK(max_abs(lhs_vec - rhs_vec) / pair_scale <= 1e-9);
  }
}

TEST_CASE("boundary rays") {
  const Frame e = Frame::identity();
  CHECK_VEC_NEAR(boundary_ray(e, Sign::Plus), (Vec3{0, 1, 1}), 1e-15);
  CHECK(max_abs(boundary_ray(e, Sign::Plus) - boundary_ray(e, Sign::Minus)) >
        1.0);
  Rng rng(37);
  for (int i = 0; i < 200; ++i) {
    const Frame g = random_frame(rng);
    const double t = rng.symmetric(3.0);
    CHECK_VEC_NEAR(boundary_ray(geodesic_flow(g, t), Sign::Plus),
                   boundary_ray(g, Sign::Plus), 1e-10);
    CHECK_VEC_NEAR(boundary_ray(geodesic_flow(g, t), Sign::Minus),
                   boundary_ray(g, Sign::Minus), 1e-10);
  }
  CHECK_THROWS_AS(normalize_ray(Vec3{0, 1, -1}), DegenerateEndpointsError);
}

TEST_CASE("frame validity under long products") {
  Rng rng(41);
  Frame g = Frame::identity();
  for (int i = 0; i < 1000; ++i) {
    g = right_mul(g, boost(rng.symmetric(0.1)) * rotation(rng.symmetric(0.1)));
    g = geodesic_flow(g, rng.symmetric(0.1));
  }
  CHECK(g.validity_residual() <= 1e-8);
}
