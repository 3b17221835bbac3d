#include "shearbd/generators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "shearbd/error.hpp"

namespace shearbd {

namespace {

using cplx = std::complex<double>;

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Roots of sum_k c_k y^k (c ascending, leading coefficient nonzero).
std::vector<cplx> polynomial_roots(const std::vector<double>& c) {
  int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  std::vector<cplx> roots;
  for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

std::vector<cplx> poly_mul_linear(const std::vector<cplx>& p, cplx a0, cplx a1) {
  std::vector<cplx> out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += p[i] * a0;
    out[i + 1] += p[i] * a1;
  }
  return out;
}

}  // namespace

Filter1D maximally_flat_lowpass(int m_flat) {
  if (m_flat < 1 || m_flat > 12)
    throw Error(ErrorCode::InvalidFilterOrder, "m_flat must lie in [1, 12], got " + std::to_string(m_flat));

  // Half-band condition |H|^2 = cos^{2m} P(sin^2), P(y) = sum C(m-1+k, k) y^k.
  std::vector<double> p(m_flat);
  for (int k = 0; k < m_flat; ++k) p[k] = binomial(m_flat - 1 + k, k);

  std::vector<cplx> poly{1.0};
  for (int i = 0; i < m_flat; ++i) poly = poly_mul_linear(poly, 1.0, 1.0);
  for (cplx y : polynomial_roots(p)) {
    // z + 1/z = 2 - 4y; keep the root inside the unit circle.
    cplx b = 2.0 - 4.0 * y;
    cplx disc = std::sqrt(b * b - 4.0);
    cplx z = (b + disc) / 2.0;
    if (std::abs(z) > 1.0) z = (b - disc) / 2.0;
    poly = poly_mul_linear(poly, -z, 1.0);
  }

  Filter1D f;
  f.role = Filter1D::Role::Lowpass;
  f.taps.resize(poly.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    f.taps[poly.size() - 1 - i] = poly[i].real();
    sum += poly[i].real();
  }
  for (double& t : f.taps) t *= std::numbers::sqrt2 / sum;
  return f;
}

Filter1D highpass_complement(const Filter1D& lowpass) {
  Filter1D g;
  g.role = Filter1D::Role::Highpass;
  g.lowpass = lowpass.taps;
  std::size_t len = lowpass.taps.size();
  g.taps.resize(len);
  for (std::size_t k = 0; k < len; ++k)
    g.taps[k] = ((k % 2) ? -1.0 : 1.0) * lowpass.taps[len - 1 - k];
  return g;
}

double Sampled1D::step() const { return std::ldexp(1.0, -r); }

double Sampled1D::operator()(double t) const {
  if (!(t > lo && t < hi)) return (t == lo && !values.empty()) ? values.front() : 0.0;
  double u = (t - lo) / step();
  std::size_t i = static_cast<std::size_t>(u);
  if (i + 1 >= values.size()) return values.back();
  double w = u - static_cast<double>(i);
  return values[i] + w * (values[i + 1] - values[i]);
}

double Sampled1D::norm2_squared() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s * step();
}

std::complex<double> Sampled1D::fourier(double xi) const {
  double h = step();
  cplx acc = 0.0;
  // Rotate a phasor instead of calling sincos per node; renormalize periodically.
  cplx rot = std::polar(1.0, -xi * h);
  cplx ph = std::polar(1.0, -xi * lo);
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += values[i] * ph;
    ph *= rot;
    if ((i & 1023) == 1023) ph = std::polar(1.0, -xi * (lo + (i + 1) * h));
  }
  return acc * h;
}

std::complex<double> Sampled1D::fourier_derivative(double xi) const {
  double h = step();
  cplx acc = 0.0;
  cplx rot = std::polar(1.0, -xi * h);
  cplx ph = std::polar(1.0, -xi * lo);
  for (std::size_t i = 0; i < values.size(); ++i) {
    double t = lo + i * h;
    acc += t * values[i] * ph;
    ph *= rot;
    if ((i & 1023) == 1023) ph = std::polar(1.0, -xi * (lo + (i + 1) * h));
  }
  return acc * cplx(0.0, -h);
}

namespace {

// phi(i * 2^-r) for i = 0 .. (L-1) 2^r.
std::vector<double> scaling_values(const std::vector<double>& h, int r) {
  const int len = static_cast<int>(h.size());
  const long scale = 1L << r;
  std::vector<double> v((len - 1) * scale + 1, 0.0);
  if (len == 2) {
    // Box function: the integer eigenproblem is degenerate.
    for (long i = 0; i < scale; ++i) v[i] = 1.0;
    return v;
  }
  const int inner = len - 2;  // nodes 1 .. L-2
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(inner + 1, inner);
  for (int n = 1; n <= inner; ++n)
    for (int l = 1; l <= inner; ++l) {
      int k = 2 * n - l;
      double m = (k >= 0 && k < len) ? std::numbers::sqrt2 * h[k] : 0.0;
      a(n - 1, l - 1) = m - (n == l ? 1.0 : 0.0);
    }
  for (int l = 0; l < inner; ++l) a(inner, l) = 1.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(inner + 1);
  rhs(inner) = 1.0;
  Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
  double resid = (a * sol - rhs).norm();
  if (!std::isfinite(resid) || resid > 1e-10)
    throw Error(ErrorCode::NonConvergent, "integer-node eigenvector residual " + std::to_string(resid));
  for (int l = 1; l <= inner; ++l) v[l * scale] = sol(l - 1);

  for (int s = 1; s <= r; ++s) {
    long stride = 1L << (r - s);
    for (long i = stride; i < static_cast<long>(v.size()); i += 2 * stride) {
      double acc = 0.0;
      for (int k = 0; k < len; ++k) {
        long idx = 2 * i - k * scale;
        if (idx >= 0 && idx < static_cast<long>(v.size())) acc += h[k] * v[idx];
      }
      v[i] = std::numbers::sqrt2 * acc;
    }
  }
  return v;
}

// Largest violation of phi(x) = sqrt2 sum h_k phi(2x - k) over nodes x on the
// 2^-(r-1) grid, i.e. iterate r-1 against iterate r on their common nodes.
double refinement_defect(const std::vector<double>& h, const std::vector<double>& v, int r) {
  const int len = static_cast<int>(h.size());
  const long scale = 1L << r;
  double worst = 0.0;
  for (long i = 0; i < static_cast<long>(v.size()); i += 2) {
    double acc = 0.0;
    for (int k = 0; k < len; ++k) {
      long idx = 2 * i - k * scale;
      if (idx >= 0 && idx < static_cast<long>(v.size())) acc += h[k] * v[idx];
    }
    if (len == 2 && i == 0) continue;  // box: left endpoint convention
    worst = std::max(worst, std::abs(v[i] - std::numbers::sqrt2 * acc));
  }
  return worst;
}

}  // namespace

Sampled1D cascade(const Filter1D& filter, int r) {
  if (r < 1 || r > 20) throw Error(ErrorCode::NonConvergent, "resolution r out of range");
  const std::vector<double>& h = filter.role == Filter1D::Role::Lowpass ? filter.taps : filter.lowpass;
  if (h.size() < 2 || h.size() % 2 != 0) throw Error(ErrorCode::InvalidFilterOrder, "filter length must be even");

  std::vector<double> phi = scaling_values(h, r);
  double defect = refinement_defect(h, phi, r);
  if (!(defect <= 1e-6))
    throw Error(ErrorCode::NonConvergent, "successive iterates differ by " + std::to_string(defect));

  Sampled1D out;
  out.r = r;
  out.lo = 0.0;
  out.hi = static_cast<double>(h.size() - 1);
  if (filter.role == Filter1D::Role::Lowpass) {
    out.values = std::move(phi);
    return out;
  }
  // psi(x) = sqrt2 sum g_k phi(2x - k), exact on the same dyadic grid.
  const long scale = 1L << r;
  const int len = static_cast<int>(filter.taps.size());
  out.values.assign(phi.size(), 0.0);
  for (long i = 0; i < static_cast<long>(phi.size()); ++i) {
    double acc = 0.0;
    for (int k = 0; k < len; ++k) {
      long idx = 2 * i - k * scale;
      if (idx >= 0 && idx < static_cast<long>(phi.size())) acc += filter.taps[k] * phi[idx];
    }
    out.values[i] = std::numbers::sqrt2 * acc;
  }
  return out;
}

double GeneratorSet::psi_norm() const { return std::sqrt(psi1.norm2_squared() * psi2.norm2_squared()); }

double GeneratorSet::phi_norm() const { return psi2.norm2_squared(); }

GeneratorSet build_generator_set(int m_flat_psi1, int m_flat_psi2, int r) {
  GeneratorSet g;
  g.m_flat_psi1 = m_flat_psi1;
  g.m_flat_psi2 = m_flat_psi2;
  g.r = r;
  g.lowpass1 = maximally_flat_lowpass(m_flat_psi1);
  g.lowpass2 = maximally_flat_lowpass(m_flat_psi2);
  g.psi1 = cascade(highpass_complement(g.lowpass1), r);
  g.psi2 = cascade(g.lowpass2, r);
  g.vanishing_moments = m_flat_psi1;
  return g;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out(count);
  double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit fit;
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return fit;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - fit.intercept - fit.slope * x[i];
    fit.residual += e * e;
  }
  return fit;
}

namespace {

double loglog_slope(const Sampled1D& f, double lo, double hi) {
  std::vector<double> xs = log_spaced(lo, hi, 256);
  std::vector<double> lx, ly;
  for (double xi : xs) {
    double mag = std::abs(f.fourier(xi));
    if (mag <= 0.0) continue;
    lx.push_back(std::log(xi));
    ly.push_back(std::log(mag));
  }
  return fit_line(lx, ly).slope;
}

}  // namespace

DecayValidationReport validate_decay(const GeneratorSet& gen, bool tilde) {
  DecayValidationReport rep;
  rep.wavelet_axis = tilde ? 2 : 1;
  rep.alpha = loglog_slope(gen.psi1, std::ldexp(1.0, -6), std::ldexp(1.0, -2));
  rep.gamma1 = -loglog_slope(gen.psi1, 8.0, 64.0);
  rep.gamma2 = -loglog_slope(gen.psi2, 8.0, 64.0);

  const int grid = 256;
  const double gamma = 4.0, alpha = 5.0;
  std::vector<double> xi = log_spaced(std::ldexp(1.0, -8), std::ldexp(1.0, 8), grid);
  std::vector<double> p1(grid), p2(grid), dp2(grid);
  for (int i = 0; i < grid; ++i) {
    p1[i] = std::abs(gen.psi1.fourier(xi[i]));
    p2[i] = std::abs(gen.psi2.fourier(xi[i]));
    dp2[i] = std::abs(gen.psi2.fourier_derivative(xi[i]));
  }

  rep.c1 = 0.0;
  rep.envelope_xi = xi;
  rep.envelope.assign(grid, 0.0);
  for (int a = 0; a < grid; ++a) {
    double e1 = std::min(1.0, std::pow(xi[a], alpha)) * std::min(1.0, std::pow(xi[a], -gamma));
    for (int b = 0; b < grid; ++b) {
      double e = e1 * std::min(1.0, std::pow(xi[b], -gamma));
      rep.c1 = std::max(rep.c1, p1[a] * p2[b] / e);
      double ratio = p1[a] * dp2[b] * std::pow(1.0 + xi[b] / xi[a], gamma);
      rep.envelope[a] = std::max(rep.envelope[a], ratio);
    }
  }
  // |psi^| is even in each variable, so the mass over R is twice the mass on the positive grid.
  double mass = 0.0, outer = 0.0;
  const int octave = grid / 16;  // the grid spans 16 octaves
  for (int a = 0; a + 1 < grid; ++a) {
    double piece = 0.5 * (rep.envelope[a] + rep.envelope[a + 1]) * (xi[a + 1] - xi[a]);
    mass += piece;
    if (a < octave || a >= grid - 1 - octave) outer += piece;
  }
  rep.envelope_mass = 2.0 * mass;
  rep.envelope_tail_fraction = mass > 0.0 ? outer / mass : 1.0;

  rep.alpha_ok = rep.alpha > 5.0;
  rep.gamma_ok = std::min(rep.gamma1, rep.gamma2) >= 4.0;
  rep.condition_ii_ok = std::isfinite(rep.envelope_mass) && rep.envelope_tail_fraction < 0.05;
  return rep;
}

}  // namespace shearbd
