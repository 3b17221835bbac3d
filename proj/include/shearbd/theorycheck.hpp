#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "shearbd/cartoon.hpp"
#include "shearbd/geometry.hpp"
#include "shearbd/system.hpp"

namespace shearbd {

// Q_{j,p} = [-2^{-j/2}, 2^{-j/2}]^2 + 2^{-j/2} p. Neighbours overlap by half.
struct DyadicCube {
  int j = 0;
  int p1 = 0, p2 = 0;

  double step() const;  // 2^{-j/2}
  double side() const { return 2.0 * step(); }
  Point center() const { return {step() * p1, step() * p2}; }
  bool contains(Point x) const;
  friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
};

struct EdgeSample {
  Point p;
  Slope s;
  double jump = 1.0;  // size of the discontinuity at p
};

// Sampled edge curves. Consecutive samples of one curve form segments; curves
// are closed loops unless `open` is set.
struct EdgeCurve {
  std::vector<EdgeSample> samples;
  bool open = false;
  int domain = 0;  // which input domain the curve came from
  int piece = -1;  // boundary piece, -1 for a whole star boundary
};

struct EdgeSet {
  std::vector<EdgeCurve> curves;
  std::vector<Point> corners;  // corners carrying a nonzero jump
};

// Whole boundaries of the given domains, one curve per domain.
EdgeSet sample_edges(const std::vector<const DomainSpec*>& domains, double spacing);
// Only the parts of the boundaries where the cartoon actually jumps.
EdgeSet sample_jump_set(const CartoonFunction& f, double spacing, double relative_threshold = 1e-9);
// One open curve per boundary piece, for intersection counting.
EdgeSet sample_pieces(const DomainSpec& d, double spacing);

std::vector<DyadicCube> cubes_meeting(int j, const EdgeSet& edges);
std::vector<DyadicCube> cubes_meeting_boundary(int j, const std::vector<const DomainSpec*>& domains);

// Support of a digital atom: the parallelogram spanned by the thresholded
// one-dimensional supports (|value| > threshold * max) of its two factors.
struct AtomSupport {
  std::size_t position = 0;
  bool transposed = false;
  double T1 = 0, T2 = 0, kappa = 0;
  double w_lo = 0, w_hi = 0, v_lo = 0, v_hi = 0;  // box in sheared pixel coordinates
  double n = 0;
  std::array<double, 4> bbox{};  // x1 min, x1 max, x2 min, x2 max in unit coordinates

  bool meets_segment(Point a, Point b) const;
  bool meets_box(const std::array<double, 4>& box) const;
};

AtomSupport atom_support(const ShearletSystem& sys, std::size_t position, double threshold = 1e-8);

// Supports of all H-cone atoms at scale j, grouped by shear.
struct ScaleSupports {
  int j = 0;
  std::vector<int> shears;
  std::vector<std::vector<AtomSupport>> by_shear;
};
ScaleSupports scale_supports(const ShearletSystem& sys, int j);

// Segments of the edge set clipped to the cube.
struct ClippedSegment {
  Point a, b;
  Slope s;  // slope at the segment start
  int curve = 0;
};
std::vector<ClippedSegment> clip_to_cube(const EdgeSet& edges, const DyadicCube& cube);

// Positions of H-cone atoms at the cube's scale whose support meets the cube
// and the edge set there.
std::vector<std::size_t> lambda_jp(const ShearletSystem& sys, const DyadicCube& cube, const EdgeSet& edges);
std::vector<std::size_t> lambda_jp(const ScaleSupports& supports, const DyadicCube& cube, const EdgeSet& edges);

enum class Regime { Estimate1 = 1, Estimate2 = 2, Overlap = 3 };

struct EnvelopeRow {
  DyadicCube cube;
  int k = 0;
  Slope s;
  Regime regime = Regime::Estimate1;
  std::size_t atoms = 0;
  double max_coefficient = 0.0;
  double envelope = 0.0;  // tested envelope without its constant
  double ratio = 0.0;     // max_coefficient / envelope
  double shear_distance = 0.0;  // |k + 2^{j/2} s|, infinite for s = INF
};

struct EnvelopeReport {
  std::vector<EnvelopeRow> rows;
  std::size_t corner_cubes_skipped = 0;
  std::vector<int> scales;
  std::vector<double> max_estimate1;  // per scale, max coefficient in estimate-1 cubes
  std::vector<double> C_estimate1;    // per scale, max ratio
  std::vector<double> C_estimate2;
  std::vector<double> falloff;        // per scale, cross-shear exponent (NaN when not fittable)
  double vertical_slope = 0.0;        // slope of log2 max_estimate1 against j
  double C1_spread = 0.0, C2_spread = 0.0;
  bool C1_stable = false, C2_stable = false;  // spread within a factor 4
};

EnvelopeReport check_decay_envelopes(const std::vector<double>& coefficients, const ShearletSystem& sys,
                                     const EdgeSet& edges, int j_lo, int j_hi);

struct CountRow {
  int j = 0, k = 0;
  DyadicCube cube;
  std::size_t N1 = 0, N2 = 0, N = 0;
  double scale_ratio1 = 0, scale_ratio2 = 0;  // N^i / 2^{j/2}
  double shear_ratio1 = 0, shear_ratio2 = 0;  // N^i / (|2^{j/2} s_i + k| + 1)
};

struct CountReport {
  std::vector<CountRow> rows;
  std::vector<int> scales;
  // Per scale maxima over k of the four ratios.
  std::vector<std::array<double, 4>> max_ratios;
  std::array<double, 4> spread{};  // max over scales / min over scales
  bool inclusion_holds = true;     // N <= min(N1, N2) everywhere
  double s1 = 0, s2 = 0;
};

// Counts for the cube at each scale containing `corner`, nearest centre first.
// Curves 1 and 2 are taken from `edges.curves[c1]` and `[c2]`.
CountReport count_intersections(const ShearletSystem& sys, const EdgeSet& edges, int c1, int c2, Point corner,
                                int j_lo, int j_hi);
std::vector<CountRow> count_intersections(const ScaleSupports& supports, const DyadicCube& cube,
                                          const EdgeSet& edges, int c1, int c2, double s1, double s2);

struct CornerReport {
  std::vector<Point> corners;
  std::vector<int> scales;
  double epsilon = 0.0;                           // threshold for the per-cube counts
  std::vector<std::vector<std::size_t>> counts;   // [corner][scale] |Lambda_{j,p}(eps)|
  std::vector<double> growth;                     // per corner fitted exponent in j
  double mean_growth = 0.0;
  std::vector<double> eps_list;
  std::vector<std::size_t> lambda_eps;            // |Lambda(eps)| with the scale cap
  double eps_exponent = 0.0;                      // growth of |Lambda(eps)| in 1/eps
  double max_normalized = 0.0;                    // max |c| 2^{3j/4} / (||psi||_1 ||f||_inf)
};

// Coefficients are normalised by ||psi||_1 ||f||_inf. Throws NoCorners.
CornerReport corner_scaling(const std::vector<double>& coefficients, const ShearletSystem& sys, const EdgeSet& edges,
                            double f_sup, int j_lo, int j_hi, std::vector<double> eps_list = {});

}  // namespace shearbd
