#pragma once

#include <optional>
#include <string>
#include <vector>

#include "margulis/orbit_data.hpp"

namespace margulis {

struct PathMetricResult {
  double lower = 0.0;
  double upper = 0.0;
  double k_hat = 1.0;      // sampled bilipschitz constant
  double alpha_hat = 0.0;  // smallest sampled overlap radius
  int translates_used = 0; // translate count of the winning path
};

/// Locally finite cover of the recurrent set by translates of a euclidean
/// ball U around a base recurrent point, for words up to cover_depth.
/// Overlap waypoints are computed per reduced difference word and moved by
/// left translation, so the path structure is equivariant.
class TranslateCover {
 public:
  TranslateCover(const SchottkyGroup& group, int cover_depth);

  /// Lower/upper bracket of the invariant path metric between x and y,
  /// enumerating paths through at most max_hops translates. The pair is
  /// first canonicalized by the translate whose pullback brings x closest
  /// to the base point. Throws NotCoveredError when either point lies in no
  /// enumerated translate.
  PathMetricResult bracket(const PhasePoint& x, const PhasePoint& y,
                           int max_hops) const;

  /// Half the minimum displacement of the interior sample under nontrivial
  /// enumerated words; a separation diagnostic for the quotient.
  double separation_estimate() const;

  const PhasePoint& base_point() const { return center_; }
  double radius() const { return radius_; }
  std::size_t translate_count() const { return maps_.size(); }

 private:
  struct Edge {
    int from = 0;
    int to = 0;
    PhasePoint waypoint;
  };

  double pullback_distance(int word_index, const PhasePoint& p) const;
  double translated_distance(int word_index, const PhasePoint& p,
                             const PhasePoint& q) const;

  std::vector<Word> labels_;
  std::vector<AffineIsometry> maps_;
  std::vector<AffineIsometry> inverses_;
  PhasePoint center_{};
  double radius_ = 0.0;
  double min_overlap_margin_ = 0.0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> edges_from_;  // edge indices by source node
  std::vector<PhasePoint> interior_sample_;
};

PathMetricResult path_metric_bracket(const SchottkyGroup& group,
                                     const PhasePoint& x, const PhasePoint& y,
                                     int cover_depth, int max_hops);

}  // namespace margulis
