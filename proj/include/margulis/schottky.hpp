#pragma once

#include <string>
#include <utility>
#include <vector>

#include "margulis/isometry.hpp"

namespace margulis {

/// Reduced word over k generators. Letters are signed 1-based indices:
/// +i is generator i-1, -i its inverse.
struct Word {
  std::vector<int> letters;

  bool empty() const { return letters.empty(); }
  std::size_t length() const { return letters.size(); }
  std::string str() const;
};

bool is_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);
Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);
Word word_power(const Word& w, int n);
Word cyclic_rotation(const Word& w, std::size_t offset);
/// Lexicographically minimal cyclic rotation; the conjugacy-class
/// representative used throughout.
Word canonical_rotation(const Word& w);

/// All reduced words of length exactly len.
std::vector<Word> reduced_words_of_length(int num_generators, int len);
/// All reduced words of length 1..max_len.
std::vector<Word> reduced_words_up_to(int num_generators, int max_len);

/// Closed arc on the boundary circle, counterclockwise from start to end in
/// the {third coordinate = 1} chart.
struct BoundaryArc {
  Vec3 start;
  Vec3 end;
};

double arc_width(const BoundaryArc& arc);
bool arc_contains(const BoundaryArc& arc, const Vec3& ray, double slack = 0.0);
bool arcs_disjoint(const BoundaryArc& a, const BoundaryArc& b);
BoundaryArc arc_around(const Vec3& center_ray, double half_width);

/// Axis data of a hyperbolic linear isometry: fixed boundary rays and the
/// translation length.
struct AxisData {
  Vec3 attracting;
  Vec3 repelling;
  double length = 0.0;
};

/// Eigenray extraction for trace > 3 + tol; throws NotHyperbolicError
/// otherwise. length = arccosh((trace - 1)/2).
AxisData axis(const LinearIsometry& h, double tol = kDefaultTol);

struct SchottkyGenerator {
  AffineIsometry map;
  AxisData axis;
  BoundaryArc source;  // around the repelling fixed point
  BoundaryArc target;  // around the attracting fixed point
};

/// Finitely generated free group of affine isometries whose linear parts
/// play ping-pong on the boundary circle. Read-only after construction.
class SchottkyGroup {
 public:
  /// Builds arcs from the generators' fixed points: half-width is
  /// arc_fill/2 times the smallest angular gap between fixed points.
  static SchottkyGroup from_generators(std::vector<AffineIsometry> generators,
                                       double arc_fill = 0.9);

  std::size_t size() const { return gens_.size(); }
  const SchottkyGenerator& generator(std::size_t i) const { return gens_[i]; }
  const std::vector<SchottkyGenerator>& generators() const { return gens_; }

  /// Letter action: +i for generator i-1, -i for its inverse.
  AffineIsometry letter(int signed_index) const;

 private:
  std::vector<SchottkyGenerator> gens_;
};

/// Left-to-right product over the word's letters. Throws WordError on a
/// non-reduced word or an out-of-range index.
AffineIsometry evaluate(const SchottkyGroup& group, const Word& w);

struct PingpongViolation {
  std::string description;
};

struct PingpongReport {
  bool pass = true;
  std::vector<PingpongViolation> violations;
};

/// Checks arc disjointness and the mapping condition (each letter sends the
/// complement of its source arc into its target arc) on sampled rays.
PingpongReport validate_pingpong(const SchottkyGroup& group,
                                 int samples_per_arc);

/// Attracting fixed rays of all reduced words of length <= depth,
/// deduplicated at 1e-8 in the circle chart and sorted by angle.
std::vector<Vec3> limit_set_sample(const SchottkyGroup& group, int depth);

/// The unique frame with the given backward/forward ideal endpoints, flowed
/// by t from the canonical base point.
Frame frame_from_endpoints(const Vec3& xi_minus, const Vec3& xi_plus,
                           double t);

/// Scale the two rays so the pairing is -1 and third coordinates agree; the
/// normalization used by frame_from_endpoints and neutral vectors.
std::pair<Vec3, Vec3> normalized_endpoint_pair(const Vec3& xi_minus,
                                               const Vec3& xi_plus);

/// True iff both ideal endpoints of g lie within tol (angular) of the
/// sampled limit set at the given depth.
bool recurrent_membership(const SchottkyGroup& group, const Frame& g,
                          int depth, double tol);

/// One cyclically-reduced representative (minimal rotation) per conjugacy
/// class of length <= max_len, with the axis of the linear part. A word and
/// its inverse are kept as distinct classes.
std::vector<std::pair<Word, AxisData>> enumerate_closed_orbits(
    const SchottkyGroup& group, int max_len);

}  // namespace margulis
