#pragma once

#include <array>
#include <optional>
#include <vector>

namespace shearbd {

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Point operator-(Point a, Point b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Point operator*(double s, Point a) { return {s * a.x1, s * a.x2}; }

// rho(theta) = a0 + sum_n a_n cos(n theta) + b_n sin(n theta), centered at translate.
struct RadiusCurve {
  double a0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  Point translate{0.5, 0.5};
  double rho0 = 0.0;  // declared bound on rho
  double nu = 0.0;    // declared bound on |rho''|

  double rho(double theta) const;
  double d1(double theta) const;
  double d2(double theta) const;
};

// Graph function with closed-form derivatives.
struct GraphFunction {
  enum class Kind { Polynomial, Trigonometric, CircularArc };
  Kind kind = Kind::Polynomial;
  std::vector<double> coeffs;  // polynomial: c0 + c1 t + ...
  double a0 = 0.0;             // trigonometric: a0 + sum a_n cos(n w t) + b_n sin(n w t)
  std::vector<double> a;
  std::vector<double> b;
  double omega = 1.0;
  double center = 0.0;  // arc: offset + branch * sqrt(radius^2 - (t - center)^2)
  double offset = 0.0;
  double radius = 0.0;
  int branch = 1;

  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;

  static GraphFunction polynomial(std::vector<double> c);
  static GraphFunction line(double value_at_zero, double slope) { return polynomial({value_at_zero, slope}); }
  static GraphFunction arc(double center, double offset, double radius, int branch);
};

struct BoundaryPiece {
  enum class Orientation {
    X2OfX1,  // x2 = E(x1), parameter is x1
    X1OfX2,  // x1 = E(x2), parameter is x2
  };
  Orientation orientation = Orientation::X2OfX1;
  double a = 0.0;
  double b = 1.0;
  bool reversed = false;  // traverse from b to a
  GraphFunction E;

  // tau in [0, 1] along the traversal direction.
  double parameter(double tau) const { return reversed ? b + (a - b) * tau : a + (b - a) * tau; }
  Point point_at_parameter(double t) const;
  Point start() const { return point_at_parameter(reversed ? b : a); }
  Point end() const { return point_at_parameter(reversed ? a : b); }
  // Unit tangent along traversal and signed curvature at parameter t.
  Point tangent(double t) const;
  double curvature(double t) const;
};

// Tangent slope in the x1 = E(x2) convention; infinite for x2 = const tangents.
struct Slope {
  bool infinite = false;
  double value = 0.0;
};

struct BoundarySample {
  Point p;
  int piece = 0;     // piece index, 0 for star domains
  double param = 0;  // graph parameter or polar angle
};

struct DomainReport {
  double max_abs_second_derivative = 0.0;  // sup |E''| or sup |rho''|
  double max_radius = 0.0;                 // star only
  double max_abs_first_derivative = 0.0;   // piecewise only
  double closure_gap = 0.0;                // piecewise only
};

class DomainSpec {
 public:
  enum class Kind { Star, Piecewise };

  Kind kind() const { return kind_; }
  double nu() const { return nu_; }
  int piece_count() const { return kind_ == Kind::Star ? 1 : static_cast<int>(pieces_.size()); }
  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  const RadiusCurve& radius() const { return radius_; }
  const std::vector<Point>& corners() const { return corners_; }
  std::array<double, 4> bounding_box() const { return bbox_; }  // x1 min, x1 max, x2 min, x2 max
  const std::vector<BoundarySample>& polyline() const { return polyline_; }
  const DomainReport& report() const { return report_; }

  bool contains(Point x) const;
  Slope tangent_slope(Point x) const;

  // Boundary polyline with at least `min_points` vertices and arc-length spacing at most `spacing`.
  std::vector<BoundarySample> sample_boundary(double spacing, std::size_t min_points = 0) const;
  Point boundary_point(int piece, double param) const;
  Slope slope_at(int piece, double param) const;

  // Sorted x2 coordinates where the polyline crosses the line x1 = const,
  // using the same half-open rule as contains().
  std::vector<double> crossings_at(double x1) const;

  // Shoelace area of the polyline.
  double polygon_area() const;

  // Distance from x to the polyline.
  double distance_to_boundary(Point x) const;

 private:
  friend DomainSpec make_star_domain(const RadiusCurve&);
  friend DomainSpec make_piecewise_domain(const std::vector<BoundaryPiece>&, double);

  std::optional<double> on_piece(int piece, Point x, double tol) const;
  void build_polyline(std::size_t min_points);
  int winding_number(Point x) const;

  Kind kind_ = Kind::Star;
  double nu_ = 0.0;
  RadiusCurve radius_;
  std::vector<BoundaryPiece> pieces_;
  std::vector<Point> corners_;
  std::vector<double> corner_angle_jump_;
  std::array<double, 4> bbox_{0, 0, 0, 0};
  std::vector<BoundarySample> polyline_;
  DomainReport report_;
};

DomainSpec make_star_domain(const RadiusCurve& radius);
DomainSpec make_piecewise_domain(const std::vector<BoundaryPiece>& pieces, double nu);

inline bool contains(const DomainSpec& d, Point x) { return d.contains(x); }
inline Slope tangent_slope(const DomainSpec& d, Point x) { return d.tangent_slope(x); }
inline const std::vector<Point>& corner_points(const DomainSpec& d) { return d.corners(); }

// Convenience builders used by configs and tests.
DomainSpec make_disk(Point center, double radius);
// Axis-aligned rectangle [x1lo, x1hi] x [x2lo, x2hi] from four straight pieces.
DomainSpec make_rectangle(double x1lo, double x1hi, double x2lo, double x2hi);
// Polygon from vertices in counterclockwise order; each edge is stored in the
// orientation that keeps |E'| <= 1.
DomainSpec make_polygon(const std::vector<Point>& vertices, double nu = 0.0);
// Rectangle with quarter-circle corners of the given radius. Each quarter is
// split at 45 degrees into two graph pieces, so all joins are C1 and the
// domain has no corner points.
DomainSpec make_rounded_rectangle(double x1lo, double x1hi, double x2lo, double x2hi, double radius);

}  // namespace shearbd
