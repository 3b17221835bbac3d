#include "shearbd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "shearbd/error.hpp"

namespace shearbd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMinPolyline = 4096;

double cross(Point a, Point b) { return a.x1 * b.x2 - a.x2 * b.x1; }
double dot(Point a, Point b) { return a.x1 * b.x1 + a.x2 * b.x2; }
double norm(Point a) { return std::hypot(a.x1, a.x2); }

double segment_distance(Point x, Point p, Point q) {
  Point d = q - p;
  double len2 = dot(d, d);
  double t = len2 > 0.0 ? std::clamp(dot(x - p, d) / len2, 0.0, 1.0) : 0.0;
  return norm(x - (p + t * d));
}

int orientation_sign(Point a, Point b, Point c) {
  double v = cross(b - a, c - a);
  return (v > 0) - (v < 0);
}

bool on_segment(Point p, Point q, Point r) {
  return std::min(p.x1, q.x1) <= r.x1 && r.x1 <= std::max(p.x1, q.x1) && std::min(p.x2, q.x2) <= r.x2 &&
         r.x2 <= std::max(p.x2, q.x2);
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  int o1 = orientation_sign(p1, p2, q1), o2 = orientation_sign(p1, p2, q2);
  int o3 = orientation_sign(q1, q2, p1), o4 = orientation_sign(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

Slope slope_from_dx(double dx1, double dx2) {
  // s = dx1/dx2 along the curve.
  if (std::abs(dx2) <= 1e-12 * std::abs(dx1)) return {true, 0.0};
  return {false, dx1 / dx2};
}

}  // namespace

double RadiusCurve::rho(double theta) const {
  double v = a0;
  for (std::size_t n = 0; n < a.size(); ++n) v += a[n] * std::cos((n + 1) * theta);
  for (std::size_t n = 0; n < b.size(); ++n) v += b[n] * std::sin((n + 1) * theta);
  return v;
}

double RadiusCurve::d1(double theta) const {
  double v = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) v -= (n + 1.0) * a[n] * std::sin((n + 1) * theta);
  for (std::size_t n = 0; n < b.size(); ++n) v += (n + 1.0) * b[n] * std::cos((n + 1) * theta);
  return v;
}

double RadiusCurve::d2(double theta) const {
  double v = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) v -= (n + 1.0) * (n + 1.0) * a[n] * std::cos((n + 1) * theta);
  for (std::size_t n = 0; n < b.size(); ++n) v -= (n + 1.0) * (n + 1.0) * b[n] * std::sin((n + 1) * theta);
  return v;
}

GraphFunction GraphFunction::polynomial(std::vector<double> c) {
  GraphFunction g;
  g.kind = Kind::Polynomial;
  g.coeffs = std::move(c);
  return g;
}

GraphFunction GraphFunction::arc(double center, double offset, double radius, int branch) {
  GraphFunction g;
  g.kind = Kind::CircularArc;
  g.center = center;
  g.offset = offset;
  g.radius = radius;
  g.branch = branch >= 0 ? 1 : -1;
  return g;
}

double GraphFunction::value(double t) const {
  switch (kind) {
    case Kind::Polynomial: {
      double v = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
      return v;
    }
    case Kind::Trigonometric: {
      double v = a0;
      for (std::size_t n = 0; n < a.size(); ++n) v += a[n] * std::cos((n + 1) * omega * t);
      for (std::size_t n = 0; n < b.size(); ++n) v += b[n] * std::sin((n + 1) * omega * t);
      return v;
    }
    case Kind::CircularArc: {
      double u = t - center;
      return offset + branch * std::sqrt(std::max(0.0, radius * radius - u * u));
    }
  }
  return 0.0;
}

double GraphFunction::d1(double t) const {
  switch (kind) {
    case Kind::Polynomial: {
      double v = 0.0;
      for (std::size_t i = coeffs.size(); i-- > 1;) v = v * t + i * coeffs[i];
      return v;
    }
    case Kind::Trigonometric: {
      double v = 0.0;
      for (std::size_t n = 0; n < a.size(); ++n) v -= (n + 1) * omega * a[n] * std::sin((n + 1) * omega * t);
      for (std::size_t n = 0; n < b.size(); ++n) v += (n + 1) * omega * b[n] * std::cos((n + 1) * omega * t);
      return v;
    }
    case Kind::CircularArc: {
      double u = t - center;
      return -branch * u / std::sqrt(radius * radius - u * u);
    }
  }
  return 0.0;
}

double GraphFunction::d2(double t) const {
  switch (kind) {
    case Kind::Polynomial: {
      double v = 0.0;
      for (std::size_t i = coeffs.size(); i-- > 2;) v = v * t + i * (i - 1.0) * coeffs[i];
      return v;
    }
    case Kind::Trigonometric: {
      double v = 0.0;
      for (std::size_t n = 0; n < a.size(); ++n) {
        double w = (n + 1) * omega;
        v -= w * w * a[n] * std::cos(w * t);
      }
      for (std::size_t n = 0; n < b.size(); ++n) {
        double w = (n + 1) * omega;
        v -= w * w * b[n] * std::sin(w * t);
      }
      return v;
    }
    case Kind::CircularArc: {
      double u = t - center;
      double q = radius * radius - u * u;
      return -branch * radius * radius / (q * std::sqrt(q));
    }
  }
  return 0.0;
}

Point BoundaryPiece::point_at_parameter(double t) const {
  return orientation == Orientation::X2OfX1 ? Point{t, E.value(t)} : Point{E.value(t), t};
}

Point BoundaryPiece::tangent(double t) const {
  double e1 = E.d1(t);
  Point d = orientation == Orientation::X2OfX1 ? Point{1.0, e1} : Point{e1, 1.0};
  if (reversed) d = -1.0 * d;
  return (1.0 / norm(d)) * d;
}

double BoundaryPiece::curvature(double t) const {
  double e1 = E.d1(t), e2 = E.d2(t);
  double k = e2 / std::pow(1.0 + e1 * e1, 1.5);
  if (orientation == Orientation::X1OfX2) k = -k;
  return reversed ? -k : k;
}

// ---------------------------------------------------------------------------

Point DomainSpec::boundary_point(int piece, double param) const {
  if (kind_ == Kind::Star) {
    double r = radius_.rho(param);
    return {radius_.translate.x1 + r * std::cos(param), radius_.translate.x2 + r * std::sin(param)};
  }
  return pieces_[piece].point_at_parameter(param);
}

Slope DomainSpec::slope_at(int piece, double param) const {
  if (kind_ == Kind::Star) {
    double r = radius_.rho(param), dr = radius_.d1(param);
    double c = std::cos(param), s = std::sin(param);
    return slope_from_dx(dr * c - r * s, dr * s + r * c);
  }
  const BoundaryPiece& p = pieces_[piece];
  double e1 = p.E.d1(param);
  if (p.orientation == BoundaryPiece::Orientation::X1OfX2) return {false, e1};
  if (std::abs(e1) <= 1e-12) return {true, 0.0};
  return {false, 1.0 / e1};
}

std::vector<BoundarySample> DomainSpec::sample_boundary(double spacing, std::size_t min_points) const {
  std::vector<BoundarySample> out;
  if (kind_ == Kind::Star) {
    // Arc length per unit angle is at most rho + |rho'|.
    double speed = 0.0;
    for (int i = 0; i < 1024; ++i) {
      double th = kTwoPi * i / 1024.0;
      speed = std::max(speed, std::hypot(radius_.rho(th), radius_.d1(th)));
    }
    std::size_t count = std::max<std::size_t>(min_points, static_cast<std::size_t>(std::ceil(kTwoPi * speed / spacing)));
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      double th = kTwoPi * static_cast<double>(i) / static_cast<double>(count);
      out.push_back({boundary_point(0, th), 0, th});
    }
    return out;
  }

  std::vector<double> lengths(pieces_.size()), turning(pieces_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const BoundaryPiece& p = pieces_[i];
    double len = 0.0, turn = 0.0;
    const int probe = 256;
    for (int s = 0; s < probe; ++s) {
      double t = p.a + (p.b - p.a) * (s + 0.5) / probe;
      double e1 = p.E.d1(t);
      double ds = std::sqrt(1.0 + e1 * e1) * (p.b - p.a) / probe;
      len += ds;
      turn += std::abs(p.curvature(t)) * ds;
    }
    lengths[i] = len;
    turning[i] = turn;
    total += len;
  }
  double ds = spacing;
  if (min_points > 0) ds = std::min(ds, total / static_cast<double>(min_points));
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const BoundaryPiece& p = pieces_[i];
    // Extra nodes where the curve turns, one per 0.005 rad.
    std::size_t count = static_cast<std::size_t>(std::ceil(lengths[i] / ds + turning[i] / 0.005));
    count = std::max<std::size_t>(count, 8);
    for (std::size_t s = 0; s < count; ++s) {
      double t = p.parameter(static_cast<double>(s) / static_cast<double>(count));
      out.push_back({p.point_at_parameter(t), static_cast<int>(i), t});
    }
  }
  return out;
}

void DomainSpec::build_polyline(std::size_t min_points) {
  polyline_ = sample_boundary(1.0, min_points);
  bbox_ = {1e300, -1e300, 1e300, -1e300};
  // Dense pass for the box so chords do not cut it short.
  for (const BoundarySample& s : sample_boundary(1e-4, 4 * min_points)) {
    bbox_[0] = std::min(bbox_[0], s.p.x1);
    bbox_[1] = std::max(bbox_[1], s.p.x1);
    bbox_[2] = std::min(bbox_[2], s.p.x2);
    bbox_[3] = std::max(bbox_[3], s.p.x2);
  }
}

int DomainSpec::winding_number(Point x) const {
  int w = 0;
  const std::size_t m = polyline_.size();
  for (std::size_t i = 0; i < m; ++i) {
    Point p = polyline_[i].p, q = polyline_[(i + 1) % m].p;
    bool up = p.x1 <= x.x1 && x.x1 < q.x1;
    bool down = q.x1 <= x.x1 && x.x1 < p.x1;
    if (!up && !down) continue;
    double c = p.x2 + (x.x1 - p.x1) * (q.x2 - p.x2) / (q.x1 - p.x1);
    if (c > x.x2) w += up ? 1 : -1;
  }
  return w;
}

std::vector<double> DomainSpec::crossings_at(double x1) const {
  std::vector<double> out;
  const std::size_t m = polyline_.size();
  for (std::size_t i = 0; i < m; ++i) {
    Point p = polyline_[i].p, q = polyline_[(i + 1) % m].p;
    bool up = p.x1 <= x1 && x1 < q.x1;
    bool down = q.x1 <= x1 && x1 < p.x1;
    if (up || down) out.push_back(p.x2 + (x1 - p.x1) * (q.x2 - p.x2) / (q.x1 - p.x1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> DomainSpec::on_piece(int piece, Point x, double tol) const {
  if (kind_ == Kind::Star) {
    Point d = x - radius_.translate;
    double th = std::atan2(d.x2, d.x1);
    if (th < 0) th += kTwoPi;
    if (std::abs(norm(d) - radius_.rho(th)) <= tol) return th;
    return std::nullopt;
  }
  const BoundaryPiece& p = pieces_[piece];
  bool over_x1 = p.orientation == BoundaryPiece::Orientation::X2OfX1;
  double t = over_x1 ? x.x1 : x.x2;
  double v = over_x1 ? x.x2 : x.x1;
  if (t < p.a - tol || t > p.b + tol) return std::nullopt;
  t = std::clamp(t, p.a, p.b);
  if (std::abs(v - p.E.value(t)) <= tol) return t;
  return std::nullopt;
}

bool DomainSpec::contains(Point x) const {
  if (kind_ == Kind::Star) {
    Point d = x - radius_.translate;
    double r = norm(d);
    if (r == 0.0) return true;
    double th = std::atan2(d.x2, d.x1);
    return r <= radius_.rho(th) * (1.0 + 1e-14);
  }
  for (int i = 0; i < piece_count(); ++i)
    if (on_piece(i, x, 1e-12)) return true;
  return winding_number(x) != 0;
}

Slope DomainSpec::tangent_slope(Point x) const {
  for (Point c : corners_)
    if (norm(x - c) <= 1e-9) throw Error(ErrorCode::CornerPoint, "one-sided tangents differ at this point");
  for (int i = 0; i < piece_count(); ++i)
    if (auto t = on_piece(i, x, 1e-9)) return slope_at(i, *t);
  throw Error(ErrorCode::NotOnBoundary, "point is farther than 1e-9 from the boundary");
}

double DomainSpec::polygon_area() const {
  double a = 0.0;
  const std::size_t m = polyline_.size();
  for (std::size_t i = 0; i < m; ++i) a += cross(polyline_[i].p, polyline_[(i + 1) % m].p);
  return std::abs(0.5 * a);
}

double DomainSpec::distance_to_boundary(Point x) const {
  double best = 1e300;
  const std::size_t m = polyline_.size();
  for (std::size_t i = 0; i < m; ++i) best = std::min(best, segment_distance(x, polyline_[i].p, polyline_[(i + 1) % m].p));
  return best;
}

// ---------------------------------------------------------------------------

DomainSpec make_star_domain(const RadiusCurve& radius) {
  DomainSpec d;
  d.kind_ = DomainSpec::Kind::Star;
  d.radius_ = radius;
  d.nu_ = radius.nu;
  if (!(radius.rho0 < 1.0))
    throw Error(ErrorCode::RadiusBoundViolated, "declared rho0 = " + std::to_string(radius.rho0) + " is not below 1");

  double max_rho = -1e300, min_rho = 1e300, max_d2 = 0.0;
  for (int i = 0; i < 4096; ++i) {
    double th = kTwoPi * i / 4096.0;
    double r = radius.rho(th);
    max_rho = std::max(max_rho, r);
    min_rho = std::min(min_rho, r);
    max_d2 = std::max(max_d2, std::abs(radius.d2(th)));
  }
  d.report_.max_radius = max_rho;
  d.report_.max_abs_second_derivative = max_d2;
  if (!(min_rho > 0.0)) throw Error(ErrorCode::RadiusBoundViolated, "rho is not positive, min " + std::to_string(min_rho));
  if (max_rho > radius.rho0)
    throw Error(ErrorCode::RadiusBoundViolated,
                "max rho " + std::to_string(max_rho) + " exceeds rho0 " + std::to_string(radius.rho0));
  if (max_d2 > radius.nu * (1.0 + 1e-12))
    throw Error(ErrorCode::CurvatureBoundViolated,
                "sup |rho''| = " + std::to_string(max_d2) + " exceeds nu = " + std::to_string(radius.nu));
  Point t = radius.translate;
  if (t.x1 - radius.rho0 < 0.0 || t.x1 + radius.rho0 > 1.0 || t.x2 - radius.rho0 < 0.0 || t.x2 + radius.rho0 > 1.0)
    throw Error(ErrorCode::NotInsideUnitSquare, "translate +- rho0 leaves the unit square");
  d.build_polyline(kMinPolyline);
  return d;
}

DomainSpec make_piecewise_domain(const std::vector<BoundaryPiece>& pieces, double nu) {
  if (pieces.empty()) throw Error(ErrorCode::NotClosed, "no boundary pieces");
  DomainSpec d;
  d.kind_ = DomainSpec::Kind::Piecewise;
  d.pieces_ = pieces;
  d.nu_ = nu;

  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const BoundaryPiece& p = pieces[i];
    std::string tag = "piece " + std::to_string(i);
    if (!(p.b > p.a)) throw Error(ErrorCode::NotClosed, tag + " has an empty parameter interval");
    double width = p.b - p.a;
    for (int s = 0; s < 16; ++s) {
      double t = p.a + width * (s + 0.5) / 16.0;
      double h = 1e-5 * width;
      double fd1 = (p.E.value(t + h) - p.E.value(t - h)) / (2 * h);
      double fd2 = (p.E.d1(t + h) - p.E.d1(t - h)) / (2 * h);
      double e1 = p.E.d1(t), e2 = p.E.d2(t);
      if (std::abs(fd1 - e1) > 1e-6 * std::max(1.0, std::abs(e1)) ||
          std::abs(fd2 - e2) > 1e-6 * std::max(1.0, std::abs(e2)))
        throw Error(ErrorCode::InconsistentDerivative, tag + " derivative formulas disagree with finite differences");
    }
    double max_e1 = 0.0, max_e2 = 0.0;
    for (int s = 0; s <= 1024; ++s) {
      double t = p.a + width * s / 1024.0;
      max_e1 = std::max(max_e1, std::abs(p.E.d1(t)));
      max_e2 = std::max(max_e2, std::abs(p.E.d2(t)));
    }
    d.report_.max_abs_first_derivative = std::max(d.report_.max_abs_first_derivative, max_e1);
    d.report_.max_abs_second_derivative = std::max(d.report_.max_abs_second_derivative, max_e2);
    if (!std::isfinite(max_e1) || max_e1 > 2.0 + 1e-12)
      throw Error(ErrorCode::SlopeTooSteep,
                  tag + " has |E'| up to " + std::to_string(max_e1) + "; split it and use the other orientation");
    if (!std::isfinite(max_e2) || max_e2 > nu * (1.0 + 1e-12) + 1e-12)
      throw Error(ErrorCode::CurvatureBoundViolated,
                  tag + " has |E''| up to " + std::to_string(max_e2) + " > nu = " + std::to_string(nu));
  }

  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const BoundaryPiece& p = pieces[i];
    const BoundaryPiece& q = pieces[(i + 1) % pieces.size()];
    double gap = norm(p.end() - q.start());
    d.report_.closure_gap = std::max(d.report_.closure_gap, gap);
    if (gap > 1e-12)
      throw Error(ErrorCode::NotClosed, "piece " + std::to_string(i) + " ends " + std::to_string(gap) +
                                            " away from the start of the next piece");
    double tp = p.reversed ? p.a : p.b;
    double tq = q.reversed ? q.b : q.a;
    Point u = p.tangent(tp), v = q.tangent(tq);
    double angle = std::abs(std::atan2(cross(u, v), dot(u, v)));
    double kappa_jump = std::abs(p.curvature(tp) - q.curvature(tq));
    if (angle > 1e-9 || kappa_jump > 1e-6) {
      d.corners_.push_back(q.start());
      d.corner_angle_jump_.push_back(angle);
    }
  }

  d.build_polyline(kMinPolyline);

  for (const BoundarySample& s : d.polyline_)
    if (s.p.x1 < 0.0 || s.p.x1 > 1.0 || s.p.x2 < 0.0 || s.p.x2 > 1.0)
      throw Error(ErrorCode::NotInsideUnitSquare, "boundary leaves the unit square");

  // Simplicity: bucket segments on a uniform grid and test non-adjacent pairs.
  const std::vector<BoundarySample>& poly = d.polyline_;
  const std::size_t m = poly.size();
  const int cells = 128;
  auto cell_of = [&](double v) { return std::clamp(static_cast<int>(v * cells), 0, cells - 1); };
  std::unordered_map<int, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < m; ++i) {
    Point p = poly[i].p, q = poly[(i + 1) % m].p;
    for (int cx = cell_of(std::min(p.x1, q.x1)); cx <= cell_of(std::max(p.x1, q.x1)); ++cx)
      for (int cy = cell_of(std::min(p.x2, q.x2)); cy <= cell_of(std::max(p.x2, q.x2)); ++cy)
        buckets[cx * cells + cy].push_back(i);
  }
  for (const auto& [key, segs] : buckets) {
    for (std::size_t u = 0; u < segs.size(); ++u)
      for (std::size_t v = u + 1; v < segs.size(); ++v) {
        std::size_t i = segs[u], j = segs[v];
        std::size_t gap = i > j ? i - j : j - i;
        if (gap <= 1 || gap == m - 1) continue;
        if (segments_intersect(poly[i].p, poly[(i + 1) % m].p, poly[j].p, poly[(j + 1) % m].p))
          throw Error(ErrorCode::NotSimple, "boundary segments " + std::to_string(i) + " and " + std::to_string(j) +
                                                " intersect");
      }
  }
  return d;
}

DomainSpec make_disk(Point center, double radius) {
  RadiusCurve rc;
  rc.a0 = radius;
  rc.translate = center;
  rc.rho0 = radius;
  rc.nu = 0.0;
  return make_star_domain(rc);
}

DomainSpec make_polygon(const std::vector<Point>& v, double nu) {
  std::vector<BoundaryPiece> pieces;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point p = v[i], q = v[(i + 1) % v.size()];
    BoundaryPiece piece;
    if (std::abs(q.x1 - p.x1) >= std::abs(q.x2 - p.x2)) {
      piece.orientation = BoundaryPiece::Orientation::X2OfX1;
      double slope = (q.x2 - p.x2) / (q.x1 - p.x1);
      piece.E = GraphFunction::line(p.x2 - slope * p.x1, slope);
      piece.a = std::min(p.x1, q.x1);
      piece.b = std::max(p.x1, q.x1);
      piece.reversed = q.x1 < p.x1;
    } else {
      piece.orientation = BoundaryPiece::Orientation::X1OfX2;
      double slope = (q.x1 - p.x1) / (q.x2 - p.x2);
      piece.E = GraphFunction::line(p.x1 - slope * p.x2, slope);
      piece.a = std::min(p.x2, q.x2);
      piece.b = std::max(p.x2, q.x2);
      piece.reversed = q.x2 < p.x2;
    }
    pieces.push_back(piece);
  }
  return make_piecewise_domain(pieces, nu);
}

DomainSpec make_rectangle(double x1lo, double x1hi, double x2lo, double x2hi) {
  return make_polygon({{x1lo, x2lo}, {x1hi, x2lo}, {x1hi, x2hi}, {x1lo, x2hi}});
}

DomainSpec make_rounded_rectangle(double x1lo, double x1hi, double x2lo, double x2hi, double radius) {
  using O = BoundaryPiece::Orientation;
  const double r = radius, h = radius / std::sqrt(2.0);
  auto straight = [](O o, double a, double b, double value) {
    BoundaryPiece p;
    p.orientation = o;
    p.a = a;
    p.b = b;
    p.E = GraphFunction::line(value, 0.0);
    return p;
  };
  // Half of a quarter arc around (c1, c2); s1, s2 point away from the centre.
  auto half = [&](O o, double c1, double c2, int s1, int s2) {
    BoundaryPiece p;
    p.orientation = o;
    if (o == O::X2OfX1) {
      p.a = std::min(c1, c1 + s1 * h);
      p.b = std::max(c1, c1 + s1 * h);
      p.E = GraphFunction::arc(c1, c2, r, s2);
    } else {
      p.a = std::min(c2, c2 + s2 * h);
      p.b = std::max(c2, c2 + s2 * h);
      p.E = GraphFunction::arc(c2, c1, r, s1);
    }
    return p;
  };
  const double l1 = x1lo + r, h1 = x1hi - r, l2 = x2lo + r, h2 = x2hi - r;
  std::vector<BoundaryPiece> pieces = {
      straight(O::X2OfX1, l1, h1, x2lo), half(O::X2OfX1, h1, l2, 1, -1), half(O::X1OfX2, h1, l2, 1, -1),
      straight(O::X1OfX2, l2, h2, x1hi), half(O::X1OfX2, h1, h2, 1, 1),  half(O::X2OfX1, h1, h2, 1, 1),
      straight(O::X2OfX1, l1, h1, x2hi), half(O::X2OfX1, l1, h2, -1, 1), half(O::X1OfX2, l1, h2, -1, 1),
      straight(O::X1OfX2, l2, h2, x1lo), half(O::X1OfX2, l1, l2, -1, -1), half(O::X2OfX1, l1, l2, -1, -1),
  };
  // Orient each piece so it starts where the previous one ended.
  auto close = [](Point a, Point b) { return std::hypot(a.x1 - b.x1, a.x2 - b.x2) < 1e-9; };
  pieces[0].reversed = false;
  for (std::size_t i = 1; i < pieces.size(); ++i) pieces[i].reversed = !close(pieces[i].start(), pieces[i - 1].end());
  return make_piecewise_domain(pieces, 2.0 * std::sqrt(2.0) / r);
}

}  // namespace shearbd
