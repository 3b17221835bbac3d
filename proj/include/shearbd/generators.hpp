#pragma once

#include <complex>
#include <vector>

namespace shearbd {

struct Filter1D {
  enum class Role { Lowpass, Highpass };

  std::vector<double> taps;
  int offset = 0;  // index of taps[0]
  Role role = Role::Lowpass;
  // For a highpass filter: the lowpass it complements, needed to cascade it.
  std::vector<double> lowpass;
};

// Daubechies minimum-phase solution of the maximally flat half-band
// conditions, 2*m_flat taps summing to sqrt(2). Accepts 1 <= m_flat <= 12.
Filter1D maximally_flat_lowpass(int m_flat);

// g_k = (-1)^k h_{L-1-k}; has as many vanishing moments as h has zeros at pi.
Filter1D highpass_complement(const Filter1D& lowpass);

// A function on [lo, hi] sampled at t_i = lo + i * 2^-r, zero outside.
struct Sampled1D {
  int r = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> values;

  double step() const;
  // Linear interpolation between nodes.
  double operator()(double t) const;
  // Riemann sum h * sum v_i^2.
  double norm2_squared() const;
  // Fourier transform int f(t) exp(-i xi t) dt by the sample sum.
  std::complex<double> fourier(double xi) const;
  // Derivative of the above with respect to xi.
  std::complex<double> fourier_derivative(double xi) const;
};

// Exact dyadic values of the scaling function (lowpass filter) or wavelet
// (highpass filter) at resolution 2^-r. Throws NonConvergent when the
// integer-node eigenproblem or the two-scale relation is not satisfied.
Sampled1D cascade(const Filter1D& filter, int r);

struct GeneratorSet {
  int m_flat_psi1 = 6;
  int m_flat_psi2 = 5;
  int r = 10;
  Filter1D lowpass1;  // wavelet side
  Filter1D lowpass2;  // scaling side
  Sampled1D psi1;     // wavelet factor
  Sampled1D psi2;     // scaling factor; phi = psi2 (x) psi2
  int vanishing_moments = 0;

  double psi(double x1, double x2) const { return psi1(x1) * psi2(x2); }
  double psi_tilde(double x1, double x2) const { return psi1(x2) * psi2(x1); }
  double phi(double x1, double x2) const { return psi2(x1) * psi2(x2); }
  double psi_norm() const;  // ||psi||_2 of the sampled generator
  double phi_norm() const;
};

GeneratorSet build_generator_set(int m_flat_psi1 = 6, int m_flat_psi2 = 5, int r = 10);

struct DecayValidationReport {
  double alpha = 0.0;    // low-frequency rise along the wavelet axis
  double gamma1 = 0.0;   // high-frequency fall along the wavelet axis
  double gamma2 = 0.0;   // high-frequency fall along the scaling axis
  double c1 = 0.0;       // sup |psi^| / envelope with alpha = 5, gamma = 4
  int wavelet_axis = 1;  // 1 for psi, 2 for psi~
  std::vector<double> envelope_xi;  // log grid for H
  std::vector<double> envelope;     // H(xi) for condition (ii)
  double envelope_mass = 0.0;       // discrete L1 mass of H
  double envelope_tail_fraction = 0.0;  // mass share of the outer octaves
  bool alpha_ok = false;
  bool gamma_ok = false;
  bool condition_ii_ok = false;
};

// Log-log fits on log-spaced frequencies (radians per unit length):
// alpha on [2^-6, 2^-2], gammas on [2^3, 2^6]. Condition (ii) uses a 256x256
// log grid over [2^-8, 2^8]^2.
DecayValidationReport validate_decay(const GeneratorSet& gen, bool tilde = false);

// Least squares slope of y against x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // sum of squared residuals
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace shearbd
