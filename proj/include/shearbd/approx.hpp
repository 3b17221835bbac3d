#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shearbd/frames.hpp"
#include "shearbd/system.hpp"

namespace shearbd {

// The N entries of largest magnitude, in decreasing magnitude with ties going
// to the smaller index. Throws NOutOfRange unless 1 <= N <= size.
CoefficientTable n_largest(const CoefficientTable& theta, std::size_t N);

// Sum of squares of everything except the N largest magnitudes. 0 <= N <= size.
double tail_energy(const CoefficientTable& theta, std::size_t N);

// tail_energy for every N in [0, size], computed with suffix sums.
std::vector<double> tail_curve(const CoefficientTable& theta);

struct DecayRow {
  std::size_t N = 0;
  double tail_energy = 0.0;
  double recon_error = 0.0;  // squared grid L2 norm of f - f_N
  double bound = 0.0;        // tail_energy / A
  int cg_iterations = 0;
  double cg_residual = 0.0;
  bool cg_converged = true;
  std::string note;
};

struct RateFit {
  double beta = 0.0;      // tail ~ C N^-beta
  double C = 0.0;
  double beta_log = 0.0;  // tail ~ C_log N^-beta_log (log N)^3
  double C_log = 0.0;
  double residual = 0.0;
  double residual_log = 0.0;
  std::size_t points = 0;
  double N_min = 0.0, N_max = 0.0;
};

struct DecayReport {
  std::vector<DecayRow> rows;
  double A = 0.0;
  double energy = 0.0;  // squared grid norm of f
  double coefficient_energy = 0.0;
  std::optional<RateFit> tail_fit;
  std::optional<RateFit> recon_fit;
};

struct DecayOptions {
  double cg_tol = 1e-6;
  int cg_max_iterations = 500;
  bool reconstruct = true;  // false records tail energies only
};

DecayReport decay_curve(const ImageGrid& f, const FrameView& sys, const std::vector<ShearletIndex>& indices,
                        const std::vector<std::size_t>& N_list, double A, const DecayOptions& opt = {});
DecayReport decay_curve(const ImageGrid& f, const ShearletSystem& sys, const std::vector<std::size_t>& N_list, double A,
                        const DecayOptions& opt = {});

enum class FitColumn { Tail, Recon };

// Least squares in log2 coordinates over rows with N_min <= N <= N_max.
// Throws InsufficientPoints below 5 usable rows.
RateFit fit_rate(const DecayReport& report, double N_min, double N_max, FitColumn column = FitColumn::Tail);
RateFit fit_rate(const std::vector<double>& N, const std::vector<double>& values, double N_min, double N_max);

// Powers of two 2^lo .. 2^hi, optionally with half-octave points in between.
std::vector<std::size_t> dyadic_n_list(int lo, int hi, bool half_octaves = false);

}  // namespace shearbd
