#include "shearbd/approx.hpp"

#include <cmath>
#include <string>

#include "shearbd/error.hpp"
#include "shearbd/generators.hpp"
#include "shearbd/parallel.hpp"

namespace shearbd {

CoefficientTable n_largest(const CoefficientTable& theta, std::size_t N) {
  if (N < 1 || N > theta.size())
    throw Error(ErrorCode::NOutOfRange, "N = " + std::to_string(N) + " with " + std::to_string(theta.size()) + " entries");
  const auto& order = theta.magnitude_order();
  auto idx = std::make_shared<std::vector<ShearletIndex>>();
  CoefficientTable out;
  idx->reserve(N);
  out.values.reserve(N);
  for (std::size_t r = 0; r < N; ++r) {
    idx->push_back(theta.index(order[r]));
    out.values.push_back(theta.values[order[r]]);
  }
  out.indices = std::move(idx);
  return out;
}

std::vector<double> tail_curve(const CoefficientTable& theta) {
  const auto& order = theta.magnitude_order();
  std::vector<double> tail(theta.size() + 1, 0.0);
  // Summing from the smallest entries up keeps the small tails accurate.
  for (std::size_t r = theta.size(); r-- > 0;) {
    double v = theta.values[order[r]];
    tail[r] = tail[r + 1] + v * v;
  }
  return tail;
}

double tail_energy(const CoefficientTable& theta, std::size_t N) {
  if (N > theta.size())
    throw Error(ErrorCode::NOutOfRange, "N = " + std::to_string(N) + " with " + std::to_string(theta.size()) + " entries");
  return tail_curve(theta)[N];
}

DecayReport decay_curve(const ImageGrid& f, const FrameView& sys, const std::vector<ShearletIndex>& indices,
                        const std::vector<std::size_t>& N_list, double A, const DecayOptions& opt) {
  if (indices.size() != sys.size) throw Error(ErrorCode::GridMismatch, "index list does not match the system");
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    if (N_list[i] < 1 || N_list[i] > sys.size)
      throw Error(ErrorCode::NOutOfRange, "N = " + std::to_string(N_list[i]) + " outside [1, " +
                                              std::to_string(sys.size) + "]");
    if (i > 0 && N_list[i] <= N_list[i - 1]) throw Error(ErrorCode::NOutOfRange, "N list must be increasing");
  }
  DecayReport rep;
  rep.A = A;
  double fn = grid_norm(f);
  rep.energy = fn * fn;

  CoefficientTable theta;
  theta.indices = std::make_shared<std::vector<ShearletIndex>>(indices);
  theta.values = sys.analyze(f);
  std::vector<double> tail = tail_curve(theta);
  rep.coefficient_energy = tail[0];
  const auto& order = theta.magnitude_order();

  rep.rows.resize(N_list.size());
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    DecayRow& row = rep.rows[i];
    row.N = N_list[i];
    row.tail_energy = tail[row.N];
    row.bound = A > 0.0 ? row.tail_energy / A : INFINITY;
  }
  if (!opt.reconstruct) return rep;

  parallel_for(N_list.size(), [&](std::size_t i) {
    DecayRow& row = rep.rows[i];
    std::vector<double> kept(sys.size, 0.0);
    for (std::size_t r = 0; r < row.N; ++r) kept[order[r]] = theta.values[order[r]];
    ImageGrid b = sys.synthesize(kept);
    CgResult cg = conjugate_gradient(sys, b, opt.cg_tol, opt.cg_max_iterations);
    row.cg_iterations = cg.iterations;
    row.cg_residual = cg.relative_residual;
    row.cg_converged = cg.converged;
    if (!cg.converged) row.note = "CGNotConverged: relative residual " + std::to_string(cg.relative_residual);
    ImageGrid diff = f;
    for (std::size_t p = 0; p < diff.data.size(); ++p) diff.data[p] -= cg.x.data[p];
    double e = grid_norm(diff);
    row.recon_error = e * e;
  });
  return rep;
}

DecayReport decay_curve(const ImageGrid& f, const ShearletSystem& sys, const std::vector<std::size_t>& N_list, double A,
                        const DecayOptions& opt) {
  return decay_curve(f, view_of(sys), sys.indices(), N_list, A, opt);
}

RateFit fit_rate(const std::vector<double>& N, const std::vector<double>& values, double N_min, double N_max) {
  std::vector<double> x, y, ylog;
  RateFit fit;
  fit.N_min = INFINITY;
  fit.N_max = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    if (N[i] < N_min || N[i] > N_max || N[i] < 2.0 || !(values[i] > 0.0)) continue;
    x.push_back(std::log2(N[i]));
    y.push_back(std::log2(values[i]));
    ylog.push_back(std::log2(values[i]) - 3.0 * std::log2(std::log(N[i])));
    fit.N_min = std::min(fit.N_min, N[i]);
    fit.N_max = std::max(fit.N_max, N[i]);
  }
  if (x.size() < 5)
    throw Error(ErrorCode::InsufficientPoints, std::to_string(x.size()) + " usable points in [" +
                                                   std::to_string(N_min) + ", " + std::to_string(N_max) + "]");
  LineFit plain = fit_line(x, y), corrected = fit_line(x, ylog);
  fit.points = x.size();
  fit.beta = -plain.slope;
  fit.C = std::exp2(plain.intercept);
  fit.residual = plain.residual;
  fit.beta_log = -corrected.slope;
  fit.C_log = std::exp2(corrected.intercept);
  fit.residual_log = corrected.residual;
  return fit;
}

RateFit fit_rate(const DecayReport& report, double N_min, double N_max, FitColumn column) {
  std::vector<double> N, v;
  for (const DecayRow& r : report.rows) {
    if (column == FitColumn::Recon && !r.cg_converged) continue;
    N.push_back(static_cast<double>(r.N));
    v.push_back(column == FitColumn::Tail ? r.tail_energy : r.recon_error);
  }
  return fit_rate(N, v, N_min, N_max);
}

std::vector<std::size_t> dyadic_n_list(int lo, int hi, bool half_octaves) {
  std::vector<std::size_t> out;
  for (int e = lo; e <= hi; ++e) {
    out.push_back(std::size_t{1} << e);
    if (half_octaves && e < hi) out.push_back(static_cast<std::size_t>(std::llround(std::ldexp(std::sqrt(2.0), e))));
  }
  return out;
}

}  // namespace shearbd
