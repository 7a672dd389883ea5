#include "margulis/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "margulis/errors.hpp"
#include "margulis/flag.hpp"
#include "margulis/lamination.hpp"
#include "margulis/path_metric.hpp"
#include "margulis/sampling.hpp"

namespace margulis {

namespace {

nlohmann::json vec_json(const Vec3& v) {
  return nlohmann::json::array({v.x1, v.x2, v.x3});
}

void write_text_file(const std::string& path, const std::string& text,
                     RunReport& report) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  out << text;
  report.emitted_files.push_back(path);
}

struct Recorder {
  RunReport& report;
  double tol;

  void add(const std::string& name, double residual, double tolerance) {
    report.checks.push_back({name, residual, tolerance, residual <= tolerance});
  }
  void add(const std::string& name, double residual) { add(name, residual, tol); }
  void add_flag(const std::string& name, bool ok) {
    report.checks.push_back({name, ok ? 0.0 : 1.0, 0.5, ok});
  }
};

// Periodic reference data reused by several commands.
std::vector<NeutralizedPoint> periodic_points(
    const std::vector<OrbitNeutralData>& orbits, double t) {
  std::vector<NeutralizedPoint> points;
  points.reserve(orbits.size());
  for (const auto& orbit : orbits) points.push_back(orbit_point(orbit, t));
  return points;
}

void run_identities(const SchottkyGroup& group, const HarnessOptions& options,
                    RunReport& report) {
  Recorder rec{report, options.tol};
  Rng rng(options.seed);

  double det_pairing = 0.0, norm_identity = 0.0, antisym = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const Vec3 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
    det_pairing =
        std::max(det_pairing, std::fabs(inner(u, cross(v, w)) - det3(u, v, w)));
    norm_identity = std::max(
        norm_identity,
        std::fabs(inner(cross(u, v), cross(u, v)) -
                  (inner(u, v) * inner(u, v) - inner(u, u) * inner(v, v))));
    antisym = std::max(antisym, max_abs(cross(u, v) + cross(v, u)));
  }
  rec.add("cross-det-pairing", det_pairing);
  rec.add("cross-norm-identity", norm_identity);
  rec.add("cross-antisymmetry", antisym);

  SectionIdentityReport worst;
  worst.identities.resize(6);
  for (int i = 0; i < 500; ++i) {
    const Frame g = random_frame(rng);
    const LinearIsometry h = random_linear(rng);
    const double t = rng.symmetric(3.0), s = rng.symmetric(3.0);
    const SectionIdentityReport sample = section_identities_check(g, h, t, s);
    for (std::size_t k = 0; k < sample.identities.size(); ++k) {
      worst.identities[k].name = sample.identities[k].name;
      worst.identities[k].residual = std::max(worst.identities[k].residual,
                                              sample.identities[k].residual);
    }
  }
  for (const auto& id : worst.identities) rec.add(id.name, id.residual);

  double one_param = 0.0, commutation = 0.0;
  double nu_relation = 0.0, nu_antisym = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double s = rng.symmetric(3.0), sp = rng.symmetric(3.0);
    one_param = std::max(one_param,
                         ((horocycle_plus(s) * horocycle_plus(sp)).m -
                          horocycle_plus(s + sp).m)
                             .max_abs());
    const double t = rng.symmetric(3.0), c = rng.symmetric(3.0);
    commutation = std::max(commutation,
                           ((boost(t) * horocycle_plus(c * std::exp(-t))).m -
                            (horocycle_plus(c) * boost(t)).m)
                               .max_abs());

    // Residuals normalized by the summed-term scale of the coefficient
    // inner products, which grows like e^{2 t1} t2^2 over the sampled range.
    const Frame g = random_frame(rng);
    const double t1 = rng.symmetric(3.0), t2 = rng.symmetric(3.0);
    const Frame h =
        right_mul(right_mul(g, boost(t1)), horocycle_plus(t2));
    const double coeff =
        inner(nu(h), nu_minus(g)) / inner(nu_plus(g), nu_minus(g));
    const Vec3 relation_rhs = nu(g) + coeff * nu_plus(g);
    const double term_gh = max_abs(nu(h)) * max_abs(nu_minus(g));
    const double term_hg = max_abs(nu(g)) * max_abs(nu_minus(h));
    nu_relation = std::max(
        nu_relation, max_abs(nu(h) - relation_rhs) /
                         std::max({1.0, max_abs(nu(h)), max_abs(relation_rhs),
                                   term_gh}));
    const double coeff_back =
        inner(nu(g), nu_minus(h)) / inner(nu_plus(h), nu_minus(h));
    const Vec3 antisym_lhs = coeff_back * nu_plus(h);
    const Vec3 antisym_rhs = -coeff * nu_plus(g);
    nu_antisym = std::max(
        nu_antisym, max_abs(antisym_lhs - antisym_rhs) /
                        std::max({1.0, max_abs(antisym_lhs),
                                  max_abs(antisym_rhs),
                                  term_gh * max_abs(nu_plus(g)),
                                  term_hg * max_abs(nu_plus(h))}));
  }
  rec.add("horocycle-one-parameter", one_param);
  rec.add("boost-horocycle-commutation", commutation);
  rec.add("horocycle-nu-relation", nu_relation);
  rec.add("horocycle-nu-antisymmetry", nu_antisym);

  // Frame drift across a long composed product.
  Frame drifter = Frame::identity();
  Rng drift_rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < 1000; ++i)
    drifter = right_mul(drifter, boost(drift_rng.symmetric(0.05)) *
                                     rotation(drift_rng.symmetric(0.05)));
  rec.add("frame-drift-1000-steps", drifter.validity_residual());

  // Leaf and chart identities on the configured group's closed orbits.
  const auto orbits = all_orbit_data(group, 2);
  const auto points = periodic_points(orbits, 0.0);
  const NeutralResolver resolver = orbit_table_resolver(orbits);

  double leaf_round = 0.0, leaf_flow = 0.0, leaf_group = 0.0;
  double norm_unit = 0.0, norm_group = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto& z = points[rng.uniform_int(0, static_cast<int>(points.size()) - 1)];
    const Sign sign = rng.unit() < 0.5 ? Sign::Plus : Sign::Minus;
    const LeafCoords c{rng.symmetric(1.0), rng.symmetric(1.0)};
    const LeafCoords back = leaf_lift(z, leaf_point(z, sign, c), sign, 1e-6);
    leaf_round = std::max(leaf_round, std::max(std::fabs(back.s1 - c.s1),
                                               std::fabs(back.s2 - c.s2)));

    const auto& orbit = orbits[rng.uniform_int(0, static_cast<int>(orbits.size()) - 1)];
    const NeutralizedPoint z2 = orbit_point(orbit, rng.symmetric(1.0));
    const double t = rng.uniform(0.0, 2.0);
    const PhasePoint flowed_leaf = affine_flow(leaf_point(z2, Sign::Plus, c), t);
    // Drifted leaf coordinates, in the original frame's sections.
    const PhasePoint expected{
        z2.point + t * nu(z2.frame) + (c.s1 + t * c.s2) * nu_plus(z2.frame),
        nu(z2.frame) + c.s2 * nu_plus(z2.frame)};
    leaf_flow = std::max(leaf_flow,
                         std::max(max_abs(flowed_leaf.point - expected.point),
                                  max_abs(flowed_leaf.dir - expected.dir)));

    const int letter = rng.uniform_int(1, static_cast<int>(group.size()));
    const AffineIsometry gamma =
        group.letter(rng.unit() < 0.5 ? letter : -letter);
    const PhasePoint moved = apply(gamma, leaf_point(z2, sign, c));
    const PhasePoint expected_moved = leaf_point(transform(gamma, z2), sign, c);
    leaf_group = std::max(
        leaf_group, std::max(max_abs(moved.point - expected_moved.point),
                             max_abs(moved.dir - expected_moved.dir)));

    norm_unit = std::max(
        norm_unit,
        std::fabs(adapted_norm(z2, nu_plus(z2.frame), Vec3{}) - 1.0));
    const Vec3 wb = random_vec(rng), wd = random_vec(rng);
    norm_group = std::max(
        norm_group,
        std::fabs(adapted_norm(transform(gamma, z2), gamma.linear(wb),
                               gamma.linear(wd)) -
                  adapted_norm(z2, wb, wd)));
  }
  rec.add("leaf-lift-round-trip", leaf_round);
  rec.add("leaf-flow-equivariance", leaf_flow);
  rec.add("leaf-group-equivariance", leaf_group);
  rec.add("adapted-norm-unit-sections", norm_unit);
  rec.add("adapted-norm-group-invariance", norm_group);

  double f_flow = 0.0, f_group = 0.0, f_central = 0.0;
  double tau_shift = 0.0, projection_flow = 0.0;
  double chart_fwd = 0.0, chart_bwd = 0.0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = 0; b < points.size(); ++b) {
      if (a == b) continue;
      const auto& za = points[a];
      const auto& zb = points[b];
      if (ray_angular_distance(boundary_ray(za.frame, Sign::Minus),
                               boundary_ray(zb.frame, Sign::Plus)) < 1e-3)
        continue;
      const double t = rng.symmetric(1.0);
      const NeutralizedPoint zb_t = orbit_point(orbits[b], t);

      f_flow = std::max(f_flow,
                        std::fabs(F_det(flow(za, 0.7, orbits[a].f_avg),
                                        flow(zb_t, 0.7, orbits[b].f_avg)) -
                                  F_det(za, zb_t)));
      const AffineIsometry gamma =
          compose(group.letter(1), group.letter(static_cast<int>(group.size())));
      const NeutralizedPoint ta = transform(gamma, za);
      const NeutralizedPoint tb = transform(gamma, zb_t);
      const double det_scale =
          std::max(1.0, max_abs(ta.point - tb.point) *
                            max_abs(nu(ta.frame)) * max_abs(nu(tb.frame)));
      f_group = std::max(
          f_group, std::fabs(F_det(ta, tb) - F_det(za, zb_t)) / det_scale);

      // Central-stable companion: shares the forward endpoint with za.
      const Vec3 xi_minus = boundary_ray(zb.frame, Sign::Minus);
      const Vec3 xi_plus = boundary_ray(za.frame, Sign::Plus);
      if (ray_angular_distance(xi_minus, xi_plus) > 1e-3) {
        const Frame companion = frame_from_endpoints(xi_minus, xi_plus, 0.0);
        const NeutralizedPoint w{
            companion,
            za.point + rng.symmetric(1.0) * nu_plus(za.frame) +
                rng.symmetric(1.0) * nu(za.frame)};
        f_central = std::max(f_central, std::fabs(F_det(za, w)));
      }

      const ChartTriple triple = chart_forward(za, zb_t);
      // tau is the flow-time coordinate; the tau = 0 projection is the
      // flow-invariant object.
      const NeutralizedPoint zb_flowed = flow(zb_t, 0.9, orbits[b].f_avg);
      tau_shift = std::max(
          tau_shift,
          std::fabs((chart_forward(za, zb_flowed).tau - triple.tau) - 0.9));
      projection_flow = std::max(
          projection_flow, max_abs(neutral_projection(za, zb_flowed) -
                                   neutral_projection(za, zb_t)));
      const PhasePoint back = chart_inverse(za, triple, resolver);
      const PhasePoint expected = zb_t.phase();
      chart_bwd = std::max(chart_bwd,
                           std::max(max_abs(back.point - expected.point),
                                    max_abs(back.dir - expected.dir)));
      const ChartTriple synth{boundary_ray(zb.frame, Sign::Minus),
                              boundary_ray(zb.frame, Sign::Plus),
                              rng.symmetric(2.0)};
      const PhasePoint realized = chart_inverse(za, synth, resolver);
      const NeutralizedPoint realized_z{
          resolver(synth.xi_minus, synth.xi_plus).frame, realized.point};
      const ChartTriple forward = chart_forward(za, realized_z);
      chart_fwd = std::max(
          chart_fwd,
          std::max({max_abs(forward.xi_minus - synth.xi_minus),
                    max_abs(forward.xi_plus - synth.xi_plus),
                    std::fabs(forward.tau - synth.tau)}));
    }
  }
  rec.add("f-det-flow-invariance", f_flow);
  rec.add("f-det-group-invariance", f_group);
  rec.add("f-det-central-stable", f_central);
  rec.add("chart-tau-flow-shift", tau_shift);
  rec.add("chart-projection-flow-invariance", projection_flow);
  rec.add("chart-roundtrip-forward", chart_fwd);
  rec.add("chart-roundtrip-backward", chart_bwd);
}

void run_limit_set(const SchottkyGroup& group, const HarnessOptions& options,
                   RunReport& report) {
  Recorder rec{report, options.tol};
  const auto rays = limit_set_sample(group, options.depth);
  rec.add_flag("limit-set-nonempty", !rays.empty());

  // Generator images of depth-d fixed rays are fixed rays of conjugated
  // words of length at most d+2.
  const auto finer = limit_set_sample(group, options.depth + 2);
  double invariance = 0.0;
  for (const Vec3& ray : rays) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      const Vec3 image =
          normalize_ray(group.generator(i).map.linear(ray));
      double best = 1e9;
      for (const Vec3& cand : finer)
        best = std::min(best, ray_angular_distance(image, cand));
      invariance = std::max(invariance, best);
    }
  }
  rec.add("limit-set-generator-invariance", invariance, 1e-6);

  double inside = 0.0;
  for (const Vec3& ray : rays) {
    bool contained = false;
    for (const auto& gen : group.generators())
      contained = contained || arc_contains(gen.source, ray, 1e-9) ||
                  arc_contains(gen.target, ray, 1e-9);
    if (!contained) inside = 1.0;
  }
  rec.add("limit-set-inside-arcs", inside, 0.5);

  if (!options.out_path.empty()) {
    std::ostringstream csv;
    csv << "index,angle,x1,x2\n";
    for (std::size_t i = 0; i < rays.size(); ++i)
      csv << i << "," << ray_angle(rays[i]) << "," << rays[i].x1 << ","
          << rays[i].x2 << "\n";
    write_text_file(options.out_path, csv.str(), report);
  }
}

void run_orbits(const SchottkyGroup& group, const HarnessOptions& options,
                RunReport& report) {
  Recorder rec{report, options.tol};
  const auto orbits = all_orbit_data(group, options.max_len);

  double invariance = 0.0;
  for (const auto& orbit : orbits) {
    const AffineIsometry g = evaluate(group, orbit.word);
    const Vec3 image = g(orbit.axis_line.base);
    const Vec3 expected =
        orbit.axis_line.base + orbit.alpha * orbit.axis_line.dir;
    invariance = std::max(invariance, max_abs(image - expected));
  }
  rec.add("axis-invariance-residual", invariance, 1e-9);

  const PropernessReport properness =
      properness_sign_diagnostic(group, options.max_len);
  rec.add_flag("margulis-sign-uniformity",
               properness.verdict == SignUniformity::AllPositive ||
                   properness.verdict == SignUniformity::AllNegative);

  if (!options.out_path.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& orbit : orbits) {
      rows.push_back({{"word", orbit.word.str()},
                      {"ell", orbit.ell},
                      {"alpha", orbit.alpha},
                      {"f_avg", orbit.f_avg},
                      {"axis_base", vec_json(orbit.axis_line.base)},
                      {"axis_dir", vec_json(orbit.axis_line.dir)}});
    }
    nlohmann::json doc = {{"orbits", rows},
                          {"sign_verdict", to_string(properness.verdict)}};
    write_text_file(options.out_path, doc.dump(2) + "\n", report);
  }
}

std::vector<double> default_t_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.5 * i);
  return grid;
}

void run_contraction(const SchottkyGroup& group, const HarnessOptions& options,
                     RunReport& report) {
  Recorder rec{report, options.tol};
  const auto grid = options.t_grid.empty() ? default_t_grid() : options.t_grid;
  const auto orbits = all_orbit_data(group, options.max_len);

  double envelope_excess = 0.0, worst_half = 0.0;
  std::ostringstream csv;
  // t1_conversion: hyperbolic time recovered as t/f_avg, exact over whole
  // periods and an orbit-average approximation within one.
  csv << "word,s1,s2,t,factor,envelope,half_time,t1_conversion\n";
  for (const auto& orbit : orbits) {
    const double half_time = half_contraction_time(orbit);
    for (int s1 = -1; s1 <= 1; ++s1) {
      for (int s2 = -1; s2 <= 1; ++s2) {
        if (s1 == 0 && s2 == 0) continue;
        const LeafCoords c{static_cast<double>(s1), static_cast<double>(s2)};
        for (double t : grid) {
          const double factor = contraction_factor(orbit, c, t);
          const double envelope = contraction_envelope(orbit, t);
          envelope_excess = std::max(envelope_excess, factor - envelope);
          csv << orbit.word.str() << "," << s1 << "," << s2 << "," << t << ","
              << factor << "," << envelope << "," << half_time
              << ",orbit-average\n";
        }
        for (double extra : {0.0, 1.0, 5.0, 25.0})
          worst_half = std::max(
              worst_half,
              contraction_factor(orbit, c, half_time + extra) - 0.5);
      }
    }
  }
  rec.add("contraction-envelope-domination", envelope_excess, 1e-12);
  rec.add("contraction-half-beyond-threshold", worst_half, 0.0);
  if (!options.out_path.empty())
    write_text_file(options.out_path, csv.str(), report);
}

void run_chart_roundtrip(const SchottkyGroup& group,
                         const HarnessOptions& options, RunReport& report) {
  Recorder rec{report, options.tol};
  Rng rng(options.seed);
  const auto orbits = all_orbit_data(group, options.max_len);
  const NeutralResolver resolver = orbit_table_resolver(orbits);

  double forward = 0.0, backward = 0.0;
  std::size_t pairs = 0;
  std::ostringstream csv;
  csv << "reference,target,backward_residual,forward_residual\n";
  for (const auto& ref_orbit : orbits) {
    const NeutralizedPoint zref = orbit_point(ref_orbit, 0.0);
    for (const auto& target : orbits) {
      if (&target == &ref_orbit) continue;
      if (ray_angular_distance(ref_orbit.repelling, target.attracting) < 1e-3)
        continue;
      ++pairs;
      const NeutralizedPoint w = orbit_point(target, rng.symmetric(1.0));
      const PhasePoint back =
          chart_inverse(zref, chart_forward(zref, w), resolver);
      const double bwd = std::max(max_abs(back.point - w.phase().point),
                                  max_abs(back.dir - w.phase().dir));
      backward = std::max(backward, bwd);

      const ChartTriple synth{target.repelling, target.attracting,
                              rng.symmetric(2.0)};
      const PhasePoint realized = chart_inverse(zref, synth, resolver);
      const NeutralizedPoint realized_z{
          resolver(synth.xi_minus, synth.xi_plus).frame, realized.point};
      const ChartTriple round = chart_forward(zref, realized_z);
      const double fwd =
          std::max({max_abs(round.xi_minus - synth.xi_minus),
                    max_abs(round.xi_plus - synth.xi_plus),
                    std::fabs(round.tau - synth.tau)});
      forward = std::max(forward, fwd);
      csv << ref_orbit.word.str() << "," << target.word.str() << "," << bwd
          << "," << fwd << "\n";
    }
  }
  rec.add("chart-roundtrip-backward", backward);
  rec.add("chart-roundtrip-forward", forward);
  rec.add_flag("chart-roundtrip-pairs-nonempty", pairs > 0);
  if (!options.out_path.empty())
    write_text_file(options.out_path, csv.str(), report);
}

void run_metric_bracket(const SchottkyGroup& group,
                        const HarnessOptions& options, RunReport& report) {
  Recorder rec{report, options.tol};
  Rng rng(options.seed);
  const int cover_depth = std::min(options.depth, 3);
  const TranslateCover cover(group, cover_depth);
  const PhasePoint base = cover.base_point();

  auto perturbed = [&](double mag) {
    return PhasePoint{base.point + random_vec(rng, mag),
                      base.dir + random_vec(rng, mag)};
  };

  double order_violation = 0.0, invariance = 0.0, single_upper = 0.0;
  std::ostringstream csv;
  csv << "pair,lower,upper,k_hat,alpha_hat,translates\n";
  const AffineIsometry gamma = evaluate(group, Word{{1}});
  for (int i = 0; i < 12; ++i) {
    const PhasePoint x = perturbed(0.4);
    const PhasePoint y = perturbed(0.4);
    const PathMetricResult r = cover.bracket(x, y, 3);
    order_violation = std::max(order_violation, r.lower - r.upper);
    csv << i << "," << r.lower << "," << r.upper << "," << r.k_hat << ","
        << r.alpha_hat << "," << r.translates_used << "\n";

    const PathMetricResult moved =
        cover.bracket(apply(gamma, x), apply(gamma, y), 3);
    invariance = std::max(invariance,
                          std::max(std::fabs(moved.lower - r.lower),
                                   std::fabs(moved.upper - r.upper)));

    // Both points are sampled inside the base cell, so the identity
    // translate contains them and bounds the upper estimate.
    single_upper = std::max(single_upper, r.upper - phase_distance(x, y));
  }
  rec.add("bracket-order", order_violation, 1e-12);
  rec.add("bracket-group-invariance", invariance, 1e-9);
  rec.add("bracket-single-translate-upper", single_upper, 1e-12);
  // Informational: the residual field carries the estimate itself.
  const double separation = cover.separation_estimate();
  report.checks.push_back({"separation-estimate", separation,
                           std::numeric_limits<double>::infinity(),
                           separation > 0.0});
  if (!options.out_path.empty())
    write_text_file(options.out_path, csv.str(), report);
}

void run_anosov_check(const SchottkyGroup& group,
                      const HarnessOptions& options, RunReport& report) {
  Recorder rec{report, options.tol};
  const auto grid = options.t_grid.empty() ? default_t_grid() : options.t_grid;
  const auto orbits = all_orbit_data(group, options.max_len);
  double c1_hat = 0.0;
  for (const auto& orbit : orbits) c1_hat = std::max(c1_hat, orbit.f_avg);

  bool all_pass = true;
  double worst_rate_margin = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& orbit : orbits) {
    const AnosovFitReport fit = anosov_bundle_check(orbit, grid, c1_hat);
    all_pass = all_pass && fit.pass;
    worst_rate_margin =
        std::max(worst_rate_margin, 0.95 * fit.rate_bound - fit.rate);
    rows.push_back({{"word", fit.word.str()},
                    {"amplitude", fit.amplitude},
                    {"rate", fit.rate},
                    {"rate_bound", fit.rate_bound},
                    {"t1_conversion", "orbit-average"},
                    {"pass", fit.pass}});
  }
  rec.add_flag("anosov-all-orbits-pass", all_pass);
  rec.add("anosov-rate-margin", worst_rate_margin, 0.0);
  if (!options.out_path.empty())
    write_text_file(options.out_path,
                    nlohmann::json({{"fits", rows}}).dump(2) + "\n", report);
}

}  // namespace

bool RunReport::pass() const {
  for (const auto& check : checks)
    if (!check.pass) return false;
  return true;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& check : checks)
    checks_json.push_back({{"name", check.name},
                           {"residual", check.residual},
                           {"tolerance", check.tolerance},
                           {"pass", check.pass}});
  return {{"command", command},
          {"seed", seed},
          {"config", config_name},
          {"checks", checks_json},
          {"emitted_files", emitted_files},
          {"pass", pass()},
          {"wall_time_seconds", wall_time_seconds}};
}

const std::vector<std::string> kCommands = {
    "identities",      "limit-set",      "orbits",      "contraction",
    "chart-roundtrip", "metric-bracket", "anosov-check"};

RunReport run_command(const std::string& command, const GroupConfig& config,
                      const HarnessOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.command = command;
  report.seed = options.seed;
  report.config_name = config.name;

  const SchottkyGroup group = build_group(config);
  const PingpongReport pingpong = validate_pingpong(group, 16);
  if (!pingpong.pass)
    throw ValidationError("configured group fails the ping-pong check: " +
                          pingpong.violations.front().description);

  if (command == "identities")
    run_identities(group, options, report);
  else if (command == "limit-set")
    run_limit_set(group, options, report);
  else if (command == "orbits")
    run_orbits(group, options, report);
  else if (command == "contraction")
    run_contraction(group, options, report);
  else if (command == "chart-roundtrip")
    run_chart_roundtrip(group, options, report);
  else if (command == "metric-bracket")
    run_metric_bracket(group, options, report);
  else if (command == "anosov-check")
    run_anosov_check(group, options, report);
  else
    throw ParseError("unknown command: " + command);

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace margulis
