#include "shearbd/cartoon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shearbd/error.hpp"
#include "shearbd/parallel.hpp"

namespace shearbd {

double bump_value(double t, double c, double r, int derivative) {
  double u = (t - c) / r;
  if (!(std::abs(u) < 1.0)) return 0.0;
  double q = 1.0 - u * u;
  switch (derivative) {
    case 0: return q * q * q * q;
    case 1: return -8.0 * u * q * q * q / r;
    default: return q * q * (56.0 * u * u - 8.0) / (r * r);
  }
}

double bump_sup(int derivative, double radius) {
  switch (derivative) {
    case 0: return 1.0;
    // |u| (1-u^2)^3 peaks at u^2 = 1/7.
    case 1: return 8.0 / (radius * std::sqrt(7.0)) * (216.0 / 343.0);
    // (1-u^2)^2 (56u^2 - 8) is extremal at u = 0 with value -8.
    default: return 8.0 / (radius * radius);
  }
}

double SmoothSpec::value(Point x) const { return derivative(x, 0, 0); }

double SmoothSpec::derivative(Point x, int d1, int d2) const {
  double v = 0.0;
  for (const BumpTerm& t : terms)
    v += t.amplitude * bump_value(x.x1, t.c1, t.r1, d1) * bump_value(x.x2, t.c2, t.r2, d2);
  return v;
}

double SmoothSpec::certified_c2_bound() const {
  static const int alphas[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  double total = 0.0;
  for (const auto& al : alphas)
    for (const BumpTerm& t : terms)
      total += std::abs(t.amplitude) * bump_sup(al[0], t.r1) * bump_sup(al[1], t.r2);
  return total;
}

double CartoonFunction::value(Point x) const {
  if (!omega_.contains(x)) return 0.0;
  double v = f0_.value(x);
  if (has_b_ && b_.contains(x)) v += f1_.value(x);
  return v;
}

namespace {

double min_distance_to_unit_boundary(const DomainSpec& d) {
  double m = 1e300;
  for (const BoundarySample& s : d.polyline())
    m = std::min({m, s.p.x1, 1.0 - s.p.x1, s.p.x2, 1.0 - s.p.x2});
  return m;
}

void check_supports(const SmoothSpec& f, const DomainSpec& omega, const char* name) {
  auto box = omega.bounding_box();
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const BumpTerm& t = f.terms[i];
    if (t.amplitude == 0.0) continue;
    if (!(t.r1 > 0.0 && t.r2 > 0.0) || t.c1 - t.r1 < box[0] || t.c1 + t.r1 > box[1] || t.c2 - t.r2 < box[2] ||
        t.c2 + t.r2 > box[3])
      throw Error(ErrorCode::SupportOutsideDomain,
                  std::string(name) + " term " + std::to_string(i) + " is not supported inside the bounding box of Omega");
  }
}

}  // namespace

CartoonCertificate certify_cartoon(const DomainSpec& omega, const DomainSpec* b, const SmoothSpec& f0,
                                   const SmoothSpec& f1) {
  CartoonCertificate c;
  c.nu_omega = omega.nu();
  c.l_omega = omega.piece_count();
  c.corners_omega = omega.corners().size();
  c.c2_f0 = f0.certified_c2_bound();
  c.c2_f1 = f1.certified_c2_bound();
  c.margin_omega_in_unit = min_distance_to_unit_boundary(omega);
  c.margin_b_in_omega = 1e300;
  if (b) {
    c.nu_b = b->nu();
    c.l_b = b->piece_count();
    c.corners_b = b->corners().size();
    for (const BoundarySample& s : b->polyline()) {
      double dist = omega.distance_to_boundary(s.p);
      if (!omega.contains(s.p)) dist = -dist;
      c.margin_b_in_omega = std::min(c.margin_b_in_omega, dist);
    }
  }
  c.valid = c.c2_f0 <= 1.0 && c.c2_f1 <= 1.0 && c.margin_omega_in_unit >= 1e-4 && c.margin_b_in_omega >= 1e-4;
  return c;
}

static CartoonFunction build(const DomainSpec& omega, const DomainSpec* b, const SmoothSpec& f0, const SmoothSpec& f1) {
  CartoonCertificate c = certify_cartoon(omega, b, f0, f1);
  if (c.margin_omega_in_unit < 1e-4)
    throw Error(ErrorCode::DomainTouchesUnitBoundary,
                "Omega is within " + std::to_string(c.margin_omega_in_unit) + " of the unit square boundary");
  if (b && c.margin_b_in_omega < 1e-4)
    throw Error(ErrorCode::NotNested, "boundary of B comes within " + std::to_string(c.margin_b_in_omega) +
                                          " of the boundary of Omega");
  if (c.c2_f0 > 1.0) throw Error(ErrorCode::C2BoundExceeded, "f0 certified C2 sum " + std::to_string(c.c2_f0) + " > 1");
  if (c.c2_f1 > 1.0) throw Error(ErrorCode::C2BoundExceeded, "f1 certified C2 sum " + std::to_string(c.c2_f1) + " > 1");
  check_supports(f0, omega, "f0");
  if (b) check_supports(f1, omega, "f1");
  return CartoonFunction(omega, b ? *b : omega, f0, b ? f1 : SmoothSpec{}, c, b != nullptr);
}

CartoonFunction make_cartoon(const DomainSpec& omega, const DomainSpec& b, const SmoothSpec& f0, const SmoothSpec& f1) {
  return build(omega, &b, f0, f1);
}

CartoonFunction make_smooth_cartoon(const DomainSpec& omega, const SmoothSpec& f0) {
  return build(omega, nullptr, f0, SmoothSpec{});
}

namespace {

// Membership along one line x1 = X. Star domains use the exact polar test,
// piecewise domains the polyline crossings (same rule as the winding number).
class LineMembership {
 public:
  LineMembership(const DomainSpec& d, double x1) : d_(d), x1_(x1) {
    if (d.kind() == DomainSpec::Kind::Piecewise) crossings_ = d.crossings_at(x1);
  }
  bool operator()(double x2) const {
    if (d_.kind() == DomainSpec::Kind::Star) return d_.contains({x1_, x2});
    auto above = crossings_.end() - std::upper_bound(crossings_.begin(), crossings_.end(), x2);
    return (above % 2) == 1;
  }

 private:
  const DomainSpec& d_;
  double x1_;
  std::vector<double> crossings_;
};

bool valid_grid_size(int n) { return n >= 64 && n <= 4096 && (n & (n - 1)) == 0; }

}  // namespace

ImageGrid rasterize(const CartoonFunction& f, int n, int s, CartoonPart part) {
  if (!valid_grid_size(n)) throw Error(ErrorCode::InvalidGrid, "n must be a power of two in [64, 4096]");
  if (s != 1 && s != 2 && s != 4 && s != 8 && s != 16)
    throw Error(ErrorCode::InvalidGrid, "supersample must be one of 1, 2, 4, 8, 16");
  ImageGrid out(n);
  const double inv = 1.0 / (static_cast<double>(s) * s);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    int i = static_cast<int>(row);
    std::vector<double> smooth(n, 0.0), jump(n, 0.0);
    for (int a = 0; a < s; ++a) {
      double x1 = (i + (a + 0.5) / s) / n;
      LineMembership in_omega(f.omega(), x1);
      std::optional<LineMembership> in_b;
      if (f.has_inner()) in_b.emplace(f.inner(), x1);
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < s; ++b) {
          double x2 = (j + (b + 0.5) / s) / n;
          if (!in_omega(x2)) continue;
          Point x{x1, x2};
          if (part != CartoonPart::JumpOnly) smooth[j] += f.f0().value(x);
          if (part != CartoonPart::SmoothOnly && in_b && (*in_b)(x2)) jump[j] += f.f1().value(x);
        }
    }
    for (int j = 0; j < n; ++j) out.at(i, j) = smooth[j] * inv + jump[j] * inv;
  });
  return out;
}

ImageGrid rasterize_indicator(const DomainSpec& d, int n, int s) {
  ImageGrid out(n);
  const double inv = 1.0 / (static_cast<double>(s) * s);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    int i = static_cast<int>(row);
    std::vector<int> count(n, 0);
    for (int a = 0; a < s; ++a) {
      LineMembership in_d(d, (i + (a + 0.5) / s) / n);
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < s; ++b)
          if (in_d((j + (b + 0.5) / s) / n)) ++count[j];
    }
    for (int j = 0; j < n; ++j) out.at(i, j) = count[j] * inv;
  });
  return out;
}

}  // namespace shearbd
