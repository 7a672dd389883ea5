#include "margulis/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "margulis/errors.hpp"

namespace margulis {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double mod_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// Letter order +1 < -1 < +2 < -2 < ...; fixes enumeration and the canonical
// rotation deterministically.
int letter_rank(int letter) {
  return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0);
}

bool rank_less(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int ra = letter_rank(a[i]), rb = letter_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return a.size() < b.size();
}

Vec3 euclidean_cross(const Vec3& u, const Vec3& v) {
  return {u.x2 * v.x3 - u.x3 * v.x2,
          u.x3 * v.x1 - u.x1 * v.x3,
          u.x1 * v.x2 - u.x2 * v.x1};
}

// Null eigenray of m for eigenvalue lambda: cofactor direction of m - lambda I.
Vec3 eigenray(const Mat3& m, double lambda) {
  Mat3 b = m;
  for (int i = 0; i < 3; ++i) b.at(i, i) -= lambda;
  const Vec3 r0{b.at(0, 0), b.at(0, 1), b.at(0, 2)};
  const Vec3 r1{b.at(1, 0), b.at(1, 1), b.at(1, 2)};
  const Vec3 r2{b.at(2, 0), b.at(2, 1), b.at(2, 2)};
  Vec3 best = euclidean_cross(r0, r1);
  for (const Vec3& cand : {euclidean_cross(r0, r2), euclidean_cross(r1, r2)}) {
    if (norm_e(cand) > norm_e(best)) best = cand;
  }
  if (norm_e(best) == 0.0)
    throw SingularSolveError("eigenray extraction degenerated");
  if (best.x3 < 0.0) best = -best;
  return normalize_ray(best);
}

}  // namespace

std::string Word::str() const {
  std::ostringstream out;
  bool first = true;
  for (int l : letters) {
    if (!first) out << ".";
    first = false;
    out << (l > 0 ? "g" : "G") << std::abs(l);
  }
  if (first) out << "e";
  return out.str();
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.letters.size(); ++i)
    if (w.letters[i] == -w.letters[i + 1]) return false;
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_reduced(w)) return false;
  if (w.letters.size() >= 2 && w.letters.front() == -w.letters.back())
    return false;
  return true;
}

Word word_inverse(const Word& w) {
  Word r;
  r.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back(-*it);
  return r;
}

Word word_concat(const Word& a, const Word& b) {
  Word r = a;
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return r;
}

Word word_power(const Word& w, int n) {
  Word r;
  for (int i = 0; i < n; ++i) r = word_concat(r, w);
  return r;
}

Word cyclic_rotation(const Word& w, std::size_t offset) {
  Word r;
  const std::size_t n = w.letters.size();
  r.letters.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    r.letters.push_back(w.letters[(i + offset) % n]);
  return r;
}

Word canonical_rotation(const Word& w) {
  Word best = w;
  for (std::size_t k = 1; k < w.letters.size(); ++k) {
    Word cand = cyclic_rotation(w, k);
    if (rank_less(cand.letters, best.letters)) best = cand;
  }
  return best;
}

std::vector<Word> reduced_words_of_length(int num_generators, int len) {
  std::vector<int> alphabet;
  for (int i = 1; i <= num_generators; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  std::vector<Word> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(Word{current});
      return;
    }
    for (int l : alphabet) {
      if (!current.empty() && current.back() == -l) continue;
      current.push_back(l);
      self(self, remaining - 1);
      current.pop_back();
    }
  };
  rec(rec, len);
  return out;
}

std::vector<Word> reduced_words_up_to(int num_generators, int max_len) {
  std::vector<Word> out;
  for (int len = 1; len <= max_len; ++len) {
    auto words = reduced_words_of_length(num_generators, len);
    out.insert(out.end(), words.begin(), words.end());
  }
  return out;
}

double arc_width(const BoundaryArc& arc) {
  return mod_two_pi(ray_angle(arc.end) - ray_angle(arc.start));
}

bool arc_contains(const BoundaryArc& arc, const Vec3& ray, double slack) {
  const double offset = mod_two_pi(ray_angle(ray) - ray_angle(arc.start));
  return offset <= arc_width(arc) + slack || offset >= kTwoPi - slack;
}

bool arcs_disjoint(const BoundaryArc& a, const BoundaryArc& b) {
  const double gap_ab = mod_two_pi(ray_angle(b.start) - ray_angle(a.start));
  const double gap_ba = mod_two_pi(ray_angle(a.start) - ray_angle(b.start));
  return gap_ab > arc_width(a) && gap_ba > arc_width(b);
}

BoundaryArc arc_around(const Vec3& center_ray, double half_width) {
  const double theta = ray_angle(center_ray);
  return {ray_from_angle(theta - half_width),
          ray_from_angle(theta + half_width)};
}

AxisData axis(const LinearIsometry& h, double tol) {
  const double tr = h.m.trace();
  if (!(tr > 3.0 + tol))
    throw NotHyperbolicError("trace " + std::to_string(tr) +
                             " is not hyperbolic");
  const double ell = std::acosh((tr - 1.0) / 2.0);
  AxisData data;
  data.length = ell;
  data.attracting = eigenray(h.m, std::exp(ell));
  data.repelling = eigenray(h.m, std::exp(-ell));
  return data;
}

SchottkyGroup SchottkyGroup::from_generators(
    std::vector<AffineIsometry> generators, double arc_fill) {
  SchottkyGroup group;
  std::vector<double> fixed_angles;
  for (const auto& gen : generators) {
    SchottkyGenerator g;
    g.map = gen;
    g.axis = axis(gen.linear);
    fixed_angles.push_back(ray_angle(g.axis.attracting));
    fixed_angles.push_back(ray_angle(g.axis.repelling));
    group.gens_.push_back(std::move(g));
  }
  std::sort(fixed_angles.begin(), fixed_angles.end());
  double min_gap = kTwoPi;
  for (std::size_t i = 0; i < fixed_angles.size(); ++i) {
    const double next =
        (i + 1 < fixed_angles.size()) ? fixed_angles[i + 1]
                                      : fixed_angles[0] + kTwoPi;
    min_gap = std::min(min_gap, next - fixed_angles[i]);
  }
  const double half_width = 0.5 * arc_fill * min_gap;
  for (auto& g : group.gens_) {
    g.source = arc_around(g.axis.repelling, half_width);
    g.target = arc_around(g.axis.attracting, half_width);
  }
  return group;
}

AffineIsometry SchottkyGroup::letter(int signed_index) const {
  const int i = std::abs(signed_index) - 1;
  if (signed_index == 0 || i >= static_cast<int>(gens_.size()))
    throw WordError("letter index out of range: " +
                    std::to_string(signed_index));
  return signed_index > 0 ? gens_[i].map : invert(gens_[i].map);
}

AffineIsometry evaluate(const SchottkyGroup& group, const Word& w) {
  if (!is_reduced(w)) throw WordError("word is not reduced: " + w.str());
  AffineIsometry acc = AffineIsometry::identity();
  for (int l : w.letters) acc = compose(acc, group.letter(l));
  return acc;
}

PingpongReport validate_pingpong(const SchottkyGroup& group,
                                 int samples_per_arc) {
  if (samples_per_arc < 2)
    throw ValidationError("samples_per_arc must be at least 2");
  PingpongReport report;
  auto fail = [&report](const std::string& what) {
    report.pass = false;
    report.violations.push_back({what});
  };

  std::vector<std::pair<std::string, const BoundaryArc*>> arcs;
  for (std::size_t i = 0; i < group.size(); ++i) {
    arcs.emplace_back("source[" + std::to_string(i) + "]",
                      &group.generator(i).source);
    arcs.emplace_back("target[" + std::to_string(i) + "]",
                      &group.generator(i).target);
  }
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (std::size_t j = i + 1; j < arcs.size(); ++j)
      if (!arcs_disjoint(*arcs[i].second, *arcs[j].second))
        fail("arcs " + arcs[i].first + " and " + arcs[j].first +
             " are not disjoint");

  // Mapping condition: each letter sends the complement of its source arc
  // into its target arc; the inverse letter goes the other way.
  auto check_map = [&](const LinearIsometry& map, const BoundaryArc& src,
                       const BoundaryArc& dst, const std::string& label) {
    const BoundaryArc complement{src.end, src.start};
    const double width = arc_width(complement);
    for (int k = 0; k < samples_per_arc; ++k) {
      const double theta = ray_angle(complement.start) +
                           width * static_cast<double>(k) /
                               static_cast<double>(samples_per_arc - 1);
      const Vec3 image = normalize_ray(map(ray_from_angle(theta)));
      if (!arc_contains(dst, image, 1e-9)) {
        fail(label + " does not map sampled ray at angle " +
             std::to_string(theta) + " into its target arc");
        return;
      }
    }
  };
  for (std::size_t i = 0; i < group.size(); ++i) {
    const auto& g = group.generator(i);
    check_map(g.map.linear, g.source, g.target,
              "generator " + std::to_string(i));
    check_map(g.map.linear.inverse(), g.target, g.source,
              "inverse generator " + std::to_string(i));
  }
  return report;
}

std::vector<Vec3> limit_set_sample(const SchottkyGroup& group, int depth) {
  if (depth < 1) throw ValidationError("depth must be at least 1");
  std::vector<double> angles;
  for (const Word& w :
       reduced_words_up_to(static_cast<int>(group.size()), depth)) {
    const AxisData data = axis(evaluate(group, w).linear);
    angles.push_back(mod_two_pi(ray_angle(data.attracting)));
  }
  std::sort(angles.begin(), angles.end());
  constexpr double dedup_tol = 1e-8;
  std::vector<Vec3> rays;
  for (double theta : angles) {
    if (!rays.empty() &&
        theta - mod_two_pi(ray_angle(rays.back())) <= dedup_tol)
      continue;
    rays.push_back(ray_from_angle(theta));
  }
  if (rays.size() >= 2) {
    const double wrap = mod_two_pi(ray_angle(rays.front())) + kTwoPi -
                        mod_two_pi(ray_angle(rays.back()));
    if (wrap <= dedup_tol) rays.pop_back();
  }
  return rays;
}

std::pair<Vec3, Vec3> normalized_endpoint_pair(const Vec3& xi_minus,
                                               const Vec3& xi_plus) {
  const Vec3 rm = normalize_ray(xi_minus);
  const Vec3 rp = normalize_ray(xi_plus);
  for (const Vec3& r : {rm, rp})
    if (std::fabs(inner(r, r)) > 1e-6)
      throw DegenerateEndpointsError("endpoint representative is not null");
  const double q = -inner(rp, rm);
  if (!(q > 1e-12))
    throw DegenerateEndpointsError("endpoint rays coincide");
  const double scale = 1.0 / std::sqrt(q);
  return {scale * rm, scale * rp};
}

Frame frame_from_endpoints(const Vec3& xi_minus, const Vec3& xi_plus,
                           double t) {
  const auto [nm, np] = normalized_endpoint_pair(xi_minus, xi_plus);
  const double r = 1.0 / std::sqrt(2.0);
  Mat3 g;
  g.set_col(0, cross(np, nm));
  g.set_col(1, r * (np - nm));
  g.set_col(2, r * (np + nm));
  return right_mul(Frame(LinearIsometry{g}), boost(t));
}

bool recurrent_membership(const SchottkyGroup& group, const Frame& g,
                          int depth, double tol) {
  const std::vector<Vec3> sample = limit_set_sample(group, depth);
  for (Sign sign : {Sign::Plus, Sign::Minus}) {
    const Vec3 ray = boundary_ray(g, sign);
    double best = kTwoPi;
    for (const Vec3& s : sample)
      best = std::min(best, ray_angular_distance(ray, s));
    if (best > tol) return false;
  }
  return true;
}

std::vector<std::pair<Word, AxisData>> enumerate_closed_orbits(
    const SchottkyGroup& group, int max_len) {
  if (max_len < 1) throw ValidationError("max_len must be at least 1");
  std::vector<std::pair<Word, AxisData>> out;
  for (int len = 1; len <= max_len; ++len) {
    for (const Word& w :
         reduced_words_of_length(static_cast<int>(group.size()), len)) {
      if (!is_cyclically_reduced(w)) continue;
      if (rank_less(canonical_rotation(w).letters, w.letters)) continue;
      out.emplace_back(w, axis(evaluate(group, w).linear));
    }
  }
  return out;
}

}  // namespace margulis
