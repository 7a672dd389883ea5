#include "margulis/path_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "margulis/errors.hpp"
#include "margulis/lamination.hpp"
#include "margulis/rng.hpp"

namespace margulis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Word freely_reduce(const Word& w) {
  Word r;
  for (int l : w.letters) {
    if (!r.letters.empty() && r.letters.back() == -l)
      r.letters.pop_back();
    else
      r.letters.push_back(l);
  }
  return r;
}

}  // namespace

double TranslateCover::pullback_distance(int word_index,
                                         const PhasePoint& p) const {
  return phase_distance(apply(inverses_[word_index], p), center_);
}

double TranslateCover::translated_distance(int word_index, const PhasePoint& p,
                                           const PhasePoint& q) const {
  return phase_distance(apply(inverses_[word_index], p),
                        apply(inverses_[word_index], q));
}

TranslateCover::TranslateCover(const SchottkyGroup& group, int cover_depth) {
  if (cover_depth < 1) throw ValidationError("cover_depth must be at least 1");

  labels_.push_back(Word{});
  for (const Word& w :
       reduced_words_up_to(static_cast<int>(group.size()), cover_depth))
    labels_.push_back(w);
  for (const Word& w : labels_) {
    maps_.push_back(evaluate(group, w));
    inverses_.push_back(invert(maps_.back()));
  }

  // Base recurrent point: the canonical neutralized point on the first
  // generator's closed orbit.
  const OrbitNeutralData orbit =
      orbit_neutral_data(group, Word{std::vector<int>{1}});
  center_ = orbit_point(orbit, 0.0).phase();

  // Radius covering the depth-1 Dirichlet-style cell around the base point.
  double max_disp = 0.0;
  for (std::size_t i = 1; i < maps_.size(); ++i) {
    if (labels_[i].length() != 1) continue;
    max_disp = std::max(max_disp, phase_distance(apply(maps_[i], center_),
                                                 center_));
  }
  radius_ = 0.75 * max_disp;

  // Overlap waypoints keyed by the reduced difference word; the waypoint for
  // (i, j) is the left translate of the canonical one by word i.
  std::map<std::vector<int>, std::optional<PhasePoint>> canonical;
  min_overlap_margin_ = kInf;
  auto canonical_waypoint =
      [&](const AffineIsometry& delta) -> std::optional<PhasePoint> {
    const PhasePoint far_center = apply(delta, center_);
    const AffineIsometry delta_inv = invert(delta);
    auto cost = [&](double lambda) {
      const PhasePoint w{center_.point +
                             lambda * (far_center.point - center_.point),
                         center_.dir + lambda * (far_center.dir - center_.dir)};
      return std::max(phase_distance(w, center_),
                      phase_distance(apply(delta_inv, w), center_));
    };
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (cost(m1) < cost(m2))
        hi = m2;
      else
        lo = m1;
    }
    const double lambda = 0.5 * (lo + hi);
    if (cost(lambda) > radius_) return std::nullopt;
    min_overlap_margin_ = std::min(min_overlap_margin_, radius_ - cost(lambda));
    return PhasePoint{center_.point +
                          lambda * (far_center.point - center_.point),
                      center_.dir + lambda * (far_center.dir - center_.dir)};
  };

  edges_from_.resize(maps_.size());
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    for (std::size_t j = 0; j < maps_.size(); ++j) {
      if (i == j) continue;
      const Word delta =
          freely_reduce(word_concat(word_inverse(labels_[i]), labels_[j]));
      auto it = canonical.find(delta.letters);
      if (it == canonical.end()) {
        AffineIsometry delta_map = AffineIsometry::identity();
        for (int l : delta.letters) delta_map = compose(delta_map, group.letter(l));
        it = canonical.emplace(delta.letters, canonical_waypoint(delta_map))
                 .first;
      }
      if (!it->second.has_value()) continue;
      Edge edge;
      edge.from = static_cast<int>(i);
      edge.to = static_cast<int>(j);
      edge.waypoint = apply(maps_[i], *it->second);
      edges_from_[i].push_back(static_cast<int>(edges_.size()));
      edges_.push_back(edge);
    }
  }
  if (!std::isfinite(min_overlap_margin_)) min_overlap_margin_ = 0.0;

  // Fixed interior sample, used for the bilipschitz and separation
  // estimates.
  Rng rng(0x5eedULL);
  for (int k = 0; k < 12; ++k) {
    Vec3 dp{rng.symmetric(1.0), rng.symmetric(1.0), rng.symmetric(1.0)};
    Vec3 dd{rng.symmetric(1.0), rng.symmetric(1.0), rng.symmetric(1.0)};
    const double scale = 0.5 * radius_ / std::sqrt(dot_e(dp, dp) + dot_e(dd, dd));
    interior_sample_.push_back(
        {center_.point + scale * dp, center_.dir + scale * dd});
  }
}

double TranslateCover::separation_estimate() const {
  double min_disp = kInf;
  for (std::size_t i = 1; i < maps_.size(); ++i)
    for (const PhasePoint& s : interior_sample_)
      min_disp = std::min(min_disp, phase_distance(apply(maps_[i], s), s));
  return 0.5 * min_disp;
}

PathMetricResult TranslateCover::bracket(const PhasePoint& x_in,
                                         const PhasePoint& y_in,
                                         int max_hops) const {
  if (max_hops < 1) throw ValidationError("max_hops must be at least 1");

  // Canonicalize by the translate whose pullback brings x closest to the
  // base point; the bracket is then invariant under the group action up to
  // rounding.
  int best_word = 0;
  double best_pull = kInf;
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const double d = pullback_distance(static_cast<int>(i), x_in);
    if (d < best_pull - 1e-12) {
      best_pull = d;
      best_word = static_cast<int>(i);
    }
  }
  const PhasePoint x = apply(inverses_[best_word], x_in);
  const PhasePoint y = apply(inverses_[best_word], y_in);

  std::vector<int> in_x, in_y;
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (pullback_distance(static_cast<int>(i), x) <= radius_)
      in_x.push_back(static_cast<int>(i));
    if (pullback_distance(static_cast<int>(i), y) <= radius_)
      in_y.push_back(static_cast<int>(i));
  }
  if (in_x.empty())
    throw NotCoveredError("first point lies in no enumerated translate");
  if (in_y.empty())
    throw NotCoveredError("second point lies in no enumerated translate");

  std::vector<char> y_member(maps_.size(), 0);
  for (int i : in_y) y_member[i] = 1;

  PathMetricResult result;
  double upper = kInf;
  std::vector<std::pair<PhasePoint, PhasePoint>> winning_segments;
  int winning_translates = 0;

  // Single-translate paths.
  for (int i : in_x) {
    if (!y_member[i]) continue;
    const double len = translated_distance(i, x, y);
    if (len < upper) {
      upper = len;
      winning_segments = {{x, y}};
      winning_translates = 1;
    }
  }

  // Multi-translate paths: slab[u][e] is the best cost using u hand-off
  // edges, measured up to the waypoint of edge e. Per-slab parents keep the
  // reconstructed segments consistent with the reported length.
  if (max_hops >= 2 && !edges_.empty()) {
    const std::size_t ne = edges_.size();
    const int max_edges = max_hops - 1;
    std::vector<char> x_member(maps_.size(), 0);
    for (int i : in_x) x_member[i] = 1;

    std::vector<std::vector<double>> slab(max_edges + 1,
                                          std::vector<double>(ne, kInf));
    std::vector<std::vector<int>> parent(max_edges + 1,
                                         std::vector<int>(ne, -1));
    for (std::size_t e = 0; e < ne; ++e)
      if (x_member[edges_[e].from])
        slab[1][e] = translated_distance(edges_[e].from, x, edges_[e].waypoint);
    for (int u = 2; u <= max_edges; ++u) {
      for (std::size_t e = 0; e < ne; ++e) {
        if (!std::isfinite(slab[u - 1][e])) continue;
        for (int out : edges_from_[edges_[e].to]) {
          const double c = slab[u - 1][e] +
                           translated_distance(edges_[e].to, edges_[e].waypoint,
                                               edges_[out].waypoint);
          if (c < slab[u][out]) {
            slab[u][out] = c;
            parent[u][out] = static_cast<int>(e);
          }
        }
      }
    }

    for (int u = 1; u <= max_edges; ++u) {
      for (std::size_t e = 0; e < ne; ++e) {
        if (!std::isfinite(slab[u][e]) || !y_member[edges_[e].to]) continue;
        const double total =
            slab[u][e] +
            translated_distance(edges_[e].to, edges_[e].waypoint, y);
        if (total < upper) {
          upper = total;
          winning_translates = u + 1;
          std::vector<int> chain;
          int cur = static_cast<int>(e);
          for (int level = u; level >= 1 && cur >= 0; --level) {
            chain.push_back(cur);
            cur = parent[level][cur];
          }
          std::reverse(chain.begin(), chain.end());
          winning_segments.clear();
          PhasePoint prev = x;
          for (int idx : chain) {
            winning_segments.emplace_back(prev, edges_[idx].waypoint);
            prev = edges_[idx].waypoint;
          }
          winning_segments.emplace_back(prev, y);
        }
      }
    }
  }

  // Bilipschitz constant over the fixed interior sample and over the winning
  // path's own segments; including the latter makes lower <= upper
  // structural rather than merely sampled.
  std::vector<std::pair<PhasePoint, PhasePoint>> pairs = winning_segments;
  for (std::size_t k = 0; k + 1 < interior_sample_.size(); ++k)
    pairs.emplace_back(interior_sample_[k], interior_sample_[k + 1]);
  pairs.emplace_back(x, y);

  double k_hat = 1.0;
  for (const auto& [p, q] : pairs) {
    double dmin = kInf, dmax = 0.0;
    for (std::size_t i = 0; i < maps_.size(); ++i) {
      const double d = translated_distance(static_cast<int>(i), p, q);
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    if (dmin > 1e-300) k_hat = std::max(k_hat, dmax / dmin);
  }

  double d_min = kInf;
  for (std::size_t i = 0; i < maps_.size(); ++i)
    d_min = std::min(d_min, translated_distance(static_cast<int>(i), x, y));

  result.k_hat = k_hat;
  result.alpha_hat = min_overlap_margin_;
  result.lower = std::min(min_overlap_margin_ / 5.0, d_min) / k_hat;
  result.upper = upper;
  result.translates_used = winning_translates;
  return result;
}

PathMetricResult path_metric_bracket(const SchottkyGroup& group,
                                     const PhasePoint& x, const PhasePoint& y,
                                     int cover_depth, int max_hops) {
  return TranslateCover(group, cover_depth).bracket(x, y, max_hops);
}

}  // namespace margulis
