#pragma once

#include <vector>

#include "shearbd/geometry.hpp"
#include "shearbd/grid.hpp"

namespace shearbd {

// amplitude * g(x1; c1, r1) * g(x2; c2, r2) with g(t; c, r) = (1 - ((t-c)/r)^2)^4 on |t-c| < r.
struct BumpTerm {
  double amplitude = 0.0;
  double c1 = 0.5, r1 = 0.25;
  double c2 = 0.5, r2 = 0.25;
};

struct SmoothSpec {
  std::vector<BumpTerm> terms;

  double value(Point x) const;
  // Partial derivative D^(d1, d2) with d1 + d2 <= 2.
  double derivative(Point x, int d1, int d2) const;
  // Sum over |alpha| <= 2 of sup |D^alpha f| bounded by closed-form extrema and
  // the triangle inequality.
  double certified_c2_bound() const;
};

// Closed-form sup norms of the 1D bump and its first two derivatives.
double bump_sup(int derivative, double radius);
double bump_value(double t, double c, double r, int derivative = 0);

struct CartoonCertificate {
  double nu_omega = 0.0, nu_b = 0.0;
  int l_omega = 0, l_b = 0;
  std::size_t corners_omega = 0, corners_b = 0;
  double c2_f0 = 0.0, c2_f1 = 0.0;
  double margin_b_in_omega = 0.0;   // min distance of sampled boundary of B to that of Omega
  double margin_omega_in_unit = 0.0;
  bool valid = false;
};

class CartoonFunction {
 public:
  CartoonFunction(DomainSpec omega, DomainSpec b, SmoothSpec f0, SmoothSpec f1, CartoonCertificate cert, bool has_b)
      : omega_(std::move(omega)), b_(std::move(b)), f0_(std::move(f0)), f1_(std::move(f1)), cert_(cert), has_b_(has_b) {}

  const DomainSpec& omega() const { return omega_; }
  const DomainSpec& inner() const { return b_; }
  bool has_inner() const { return has_b_; }
  const SmoothSpec& f0() const { return f0_; }
  const SmoothSpec& f1() const { return f1_; }
  const CartoonCertificate& certificate() const { return cert_; }

  double value(Point x) const;

 private:
  DomainSpec omega_;
  DomainSpec b_;
  SmoothSpec f0_;
  SmoothSpec f1_;
  CartoonCertificate cert_;
  bool has_b_;
};

// Which parts of f to rasterize; linearity lets callers split them.
enum class CartoonPart { All, SmoothOnly, JumpOnly };

CartoonCertificate certify_cartoon(const DomainSpec& omega, const DomainSpec* b, const SmoothSpec& f0,
                                   const SmoothSpec& f1);
CartoonFunction make_cartoon(const DomainSpec& omega, const DomainSpec& b, const SmoothSpec& f0, const SmoothSpec& f1);
// f = f0 chi_Omega without an inner set.
CartoonFunction make_smooth_cartoon(const DomainSpec& omega, const SmoothSpec& f0);

ImageGrid rasterize(const CartoonFunction& f, int n, int supersample, CartoonPart part = CartoonPart::All);

// Cell-average indicator of a domain.
ImageGrid rasterize_indicator(const DomainSpec& d, int n, int supersample);

}  // namespace shearbd
