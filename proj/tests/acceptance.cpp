// Acceptance run: one PASS/FAIL line per criterion, numbers alongside.
// Usage: shearbd_acceptance [criterion ...]   (default: all nine)
#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "shearbd/approx.hpp"
#include "shearbd/error.hpp"
#include "shearbd/frames.hpp"
#include "shearbd/io.hpp"
#include "shearbd/theorycheck.hpp"

using namespace shearbd;
using io::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::shared_ptr<const GeneratorSet> default_generators() {
  static auto g = std::make_shared<const GeneratorSet>(build_generator_set(6, 5, 10));
  return g;
}

SystemParams params(int n, int j_max, double sigma = 1.0) {
  SystemParams p;
  p.n = n;
  p.j_max = j_max;
  p.support_scale = sigma;
  return p;
}

ImageGrid random_grid(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  ImageGrid g(n);
  for (double& v : g.data) v = d(rng);
  return g;
}

std::vector<double> random_vector(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(size);
  for (double& x : v) x = d(rng);
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

json config(const std::string& name) { return io::read_json((fs::path(SHEARBD_SOURCE_DIR) / "configs" / name).string()); }

SystemParams params_of(const json& cfg) {
  const json& s = cfg.at("system");
  return params(s.at("n").get<int>(), s.at("j_max").get<int>());
}

ImageGrid raster_of(const json& cfg) {
  CartoonFunction f = io::cartoon_from_json(cfg.at("cartoon"));
  return rasterize(f, cfg.at("system").at("n").get<int>(), cfg.at("raster").at("supersample").get<int>());
}

// 1. Adjoint identity and a symmetric positive frame operator.
Outcome adjoint_and_gram() {
  auto t0 = Clock::now();
  ShearletSystem sys(default_generators(), params(256, 4));
  double adj = 0.0, sym = 0.0, min_quad = 1e300;
  for (std::uint64_t s = 0; s < 20; ++s) {
    ImageGrid f = random_grid(256, 1000 + s), g = random_grid(256, 2000 + s);
    std::vector<double> theta = random_vector(sys.size(), 3000 + s);
    adj = std::max(adj, rel(dot(sys.analyze_values(f), theta), grid_dot(f, sys.synthesize_values(theta))));
    ImageGrid sf = frame_apply(f, sys), sg = frame_apply(g, sys);
    sym = std::max(sym, rel(grid_dot(sf, g), grid_dot(f, sg)));
    min_quad = std::min(min_quad, grid_dot(sf, f) / grid_dot(f, f));
  }
  double t = seconds_since(t0);
  return {adj <= 1e-10 && sym <= 1e-10 && min_quad > 0.0 && t < 60.0,
          fmt("adjoint %.2e, symmetry %.2e (<= 1e-10), min <Sf,f>/|f|^2 %.3e (> 0), %.1f s (< 60)", adj, sym, min_quad, t)};
}

// 2. Unclipped atom norms against the generator norm.
Outcome norm_invariance() {
  const int n = 256;
  ShearletSystem sys(default_generators(), params(n, 5));  // 2^5 = n / 8
  const double target = default_generators()->psi_norm();
  std::mt19937_64 rng(7);
  double worst = 0.0;
  int tested = 0;
  while (tested < 200) {
    const ShearletIndex& idx = sys.indices()[rng() % sys.size()];
    if (idx.cone == Cone::Low || (1 << idx.j) > n / 8) continue;
    worst = std::max(worst, std::abs(sys.atom_norm_unclipped(idx) - target) / target);
    ++tested;
  }
  return {worst <= 0.01, fmt("%d atoms, worst relative deviation %.3e (<= 1e-2)", tested, worst)};
}

// 3. Base and projected systems agree on Omega-supported fields.
Outcome projection_equivalence() {
  auto t0 = Clock::now();
  ShearletSystem sys(default_generators(), params(256, 4));
  BoundsOptions o;
  FrameBounds b = estimate_bounds(view_of(sys), o);
  json cfg = config("corner_cartoon.json");
  DomainSpec omega = io::domain_from_json(cfg.at("cartoon").at("omega"));
  ProjectedSystem proj(sys, omega);
  EquivalenceReport r = check_projection_equivalence(proj, b, 50, 11, false);
  double t = seconds_since(t0);
  return {r.passed() && t < 300.0,
          fmt("%d fields, max table difference %.2e (<= 1e-12), ratios [%.4g, %.4g] in [0.95 A, 1.05 B] = [%.4g, %.4g]%s, "
              "%.0f s (< 300)",
              r.trials, r.max_table_difference, r.min_ratio, r.max_ratio, 0.95 * b.A, 1.05 * b.B,
              b.converged ? "" : " (bound iterations not converged)", t)};
}

// 4. Tail exponent of a jump-free cartoon.
Outcome smooth_rate() {
  auto t0 = Clock::now();
  json cfg = config("smooth.json");
  ShearletSystem sys(default_generators(), params_of(cfg));
  ImageGrid g = raster_of(cfg);
  DecayOptions opt;
  opt.reconstruct = false;
  DecayReport rep = decay_curve(g, sys, dyadic_n_list(6, 11, true), 1.0, opt);
  RateFit fit = fit_rate(rep, 64, 2048, FitColumn::Tail);
  double t = seconds_since(t0);
  return {fit.beta >= 1.8 && t < 900.0,
          fmt("beta %.3f (>= 1.8) over N in [2^6, 2^11], %zu points, %.0f s (< 900)", fit.beta, fit.points, t)};
}

// 5. Log-corrected tail exponent of the corner cartoon and the reconstruction bound.
Outcome main_rate() {
  auto t0 = Clock::now();
  json cfg = config("corner_cartoon.json");
  ShearletSystem sys(default_generators(), params_of(cfg));
  ImageGrid g = raster_of(cfg);
  // One frame application costs about a second here; the iteration budgets
  // keep the whole criterion inside its time limit.
  BoundsOptions bo;
  bo.tol = 1e-3;
  bo.max_power_iterations = 100;
  bo.max_inverse_iterations = 3;
  bo.max_cg_iterations = 40;
  FrameBounds b = estimate_bounds(view_of(sys), bo);
  DecayOptions opt;
  opt.cg_tol = 1e-6;
  opt.cg_max_iterations = 50;
  DecayReport rep = decay_curve(g, sys, dyadic_n_list(6, 12, true), b.A, opt);
  RateFit fit = fit_rate(rep, 64, 4096, FitColumn::Tail);
  bool bound_ok = true;
  int converged = 0;
  double worst = 0.0;
  for (const DecayRow& row : rep.rows) {
    bound_ok = bound_ok && row.recon_error <= 1.05 * row.bound;
    worst = std::max(worst, row.recon_error / row.bound);
    converged += row.cg_converged;
  }
  double t = seconds_since(t0);
  bool rate_ok = fit.beta_log >= 1.6 && fit.beta_log <= 2.4;
  return {rate_ok && bound_ok && t < 1800.0,
          fmt("beta_log %.3f (in [1.6, 2.4]), beta %.3f; A_est %.3e; max recon/bound %.3f (<= 1.05), CG converged on "
              "%d of %zu rows; %.0f s (< 1800)",
              fit.beta_log, fit.beta, b.A, worst, converged, rep.rows.size(), t)};
}

EnvelopeReport envelopes(const std::string& name) {
  json cfg = config(name);
  ShearletSystem sys(default_generators(), params_of(cfg));
  CartoonFunction f = io::cartoon_from_json(cfg.at("cartoon"));
  ImageGrid g = raster_of(cfg);
  EdgeSet edges = sample_jump_set(f, cfg.at("check").at("edge_spacing").get<double>());
  return check_decay_envelopes(sys.analyze_values(g), sys, edges, 2, 6);
}

// 6. Vertical-edge slope and cross-shear falloff.
Outcome decay_envelopes() {
  EnvelopeReport v = envelopes("lens.json"), h = envelopes("lens_transposed.json");
  // The falloff is an asymptotic exponent: read it at the finest scale.
  double falloff = h.falloff.empty() ? std::nan("") : h.falloff.back();
  std::string per_scale;
  for (double x : h.falloff) per_scale += fmt("%s%.2f", per_scale.empty() ? "" : " ", x);
  bool slope_ok = v.vertical_slope >= -2.75 && v.vertical_slope <= -1.75;
  bool falloff_ok = falloff >= 2.2 && falloff <= 3.8;
  return {slope_ok && falloff_ok,
          fmt("vertical slope %.3f (in [-2.75, -1.75]) %s; falloff at j = 6 %.3f (in [2.2, 3.8]) %s; falloff j = 2..6: %s",
              v.vertical_slope, slope_ok ? "ok" : "out", falloff, falloff_ok ? "ok" : "out", per_scale.c_str())};
}

// 7. Intersection counts near corners and growth of corner-cube index sets.
Outcome counting() {
  json kite = config("kite.json");
  ShearletSystem sys(default_generators(), params_of(kite));
  DomainSpec B = io::domain_from_json(kite.at("cartoon").at("B"));
  EdgeSet pieces = sample_pieces(B, kite.at("check").at("edge_spacing").get<double>());
  const int L = static_cast<int>(pieces.curves.size());
  double worst_spread = 0.0;
  int corners = 0;
  for (int i = 0; i < L; ++i) {
    Point start = pieces.curves[i].samples.front().p;
    bool corner = false;
    for (Point q : B.corners()) corner = corner || std::hypot(q.x1 - start.x1, q.x2 - start.x2) < 1e-9;
    if (!corner) continue;
    CountReport rep = count_intersections(sys, pieces, (i + L - 1) % L, i, start, 2, 6);
    for (double s : rep.spread) worst_spread = std::max(worst_spread, s);
    ++corners;
  }

  json sq = config("square_corner.json");
  ShearletSystem sys2(default_generators(), params_of(sq));
  CartoonFunction f = io::cartoon_from_json(sq.at("cartoon"));
  ImageGrid g = raster_of(sq);
  double sup = 0.0;
  for (double v : g.data) sup = std::max(sup, std::abs(v));
  EdgeSet edges = sample_jump_set(f, sq.at("check").at("edge_spacing").get<double>());
  CornerReport cr = corner_scaling(sys2.analyze_values(g), sys2, edges, sup, 2, 6);

  bool counts_ok = corners > 0 && worst_spread < 4.0;
  bool growth_ok = cr.mean_growth >= 0.25 && cr.mean_growth <= 0.75;
  return {counts_ok && growth_ok,
          fmt("%d kite corners, largest ratio spread over j = 2..6 %.3f (< 4); corner-cube growth %.3f (in [0.25, 0.75])",
              corners, worst_spread, cr.mean_growth)};
}

// |f^(xi)| by a plain Riemann sum with exact phases at every node.
double dft_magnitude(const Sampled1D& f, double xi) {
  std::complex<double> acc = 0.0;
  const double h = f.step();
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double t = f.lo + static_cast<double>(i) * h;
    acc += f.values[i] * std::polar(1.0, -xi * t);
  }
  return std::abs(acc) * h;
}

// |f^| has near-zeros, so the fit depends on where the frequencies fall; use
// the same 256 log-spaced points as the library fit.
double oracle_slope(const Sampled1D& f, double lo, double hi) {
  const int m = 256;
  std::vector<double> x, y;
  for (int i = 0; i < m; ++i) {
    double xi = lo * std::pow(hi / lo, static_cast<double>(i) / (m - 1));
    x.push_back(std::log(xi));
    y.push_back(std::log(dft_magnitude(f, xi)));
  }
  return fit_line(x, y).slope;
}

// 8. Fitted decay exponents of the default generators.
Outcome generator_flags() {
  DecayValidationReport r = validate_decay(*default_generators());
  GeneratorSet fine = build_generator_set(6, 5, 12);
  double a = oracle_slope(fine.psi1, std::ldexp(1.0, -6), std::ldexp(1.0, -2));
  double g1 = -oracle_slope(fine.psi1, 8.0, 64.0), g2 = -oracle_slope(fine.psi2, 8.0, 64.0);
  double agree = std::max({std::abs(a - r.alpha), std::abs(g1 - r.gamma1), std::abs(g2 - r.gamma2)});
  bool flags = r.alpha > 5.0 && std::min(r.gamma1, r.gamma2) >= 4.0;
  return {flags && agree <= 0.1,
          fmt("alpha %.4f (> 5), gamma1 %.4f, gamma2 %.4f (>= 4); oracle at r = 12: %.4f, %.4f, %.4f, max gap %.2e (<= 0.1)",
              r.alpha, r.gamma1, r.gamma2, a, g1, g2, agree)};
}

double rel_inf(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
}

Eigen::VectorXd as_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct SmallInstance {
  double operators = 0.0;  // worst relative mismatch of analyze, synthesize, frame_apply
  double dual = 0.0;       // dual reconstruction against least squares
};

// Dense matrices built atom by atom from sample_atom.
SmallInstance small_instance(double sigma) {
  const int n = 32, N = n * n;
  const double h2 = 1.0 / (n * n);
  ShearletSystem sys(default_generators(), params(n, 1, sigma));
  const auto rows = static_cast<Eigen::Index>(sys.size());
  Eigen::MatrixXd atoms(rows, N);
  for (Eigen::Index r = 0; r < rows; ++r) {
    ImageGrid a = sys.sample_atom(sys.indices()[static_cast<std::size_t>(r)]);
    for (int c = 0; c < N; ++c) atoms(r, c) = a.data[static_cast<std::size_t>(c)];
  }
  SmallInstance out;
  for (std::uint64_t s = 0; s < 5; ++s) {
    ImageGrid f = random_grid(n, 40 + s);
    std::vector<double> theta = random_vector(sys.size(), 50 + s);
    Eigen::VectorXd fv = as_vector(f.data), tv = as_vector(theta);
    Eigen::VectorXd analysis = h2 * (atoms * fv), synthesis = atoms.transpose() * tv;
    Eigen::VectorXd frame = atoms.transpose() * analysis;
    out.operators = std::max({out.operators, rel_inf(analysis, as_vector(sys.analyze_values(f))),
                              rel_inf(synthesis, as_vector(sys.synthesize_values(theta).data)),
                              rel_inf(frame, as_vector(frame_apply(f, sys).data))});
  }
  // Least squares for the analysis operator h^2 * atoms; minimum norm where it is singular.
  std::vector<double> theta = random_vector(sys.size(), 60);
  Eigen::VectorXd ls = (h2 * atoms).completeOrthogonalDecomposition().solve(as_vector(theta));
  try {
    ImageGrid x = dual_reconstruct(theta, view_of(sys), 1e-13, 20000);
    out.dual = rel_inf(as_vector(x.data), ls);
  } catch (const Error&) {
    out.dual = std::numeric_limits<double>::infinity();
  }
  return out;
}

// 9. Small-instance brute-force equivalence. The default system (support
// scale 1) is the instance under test; scale 8 shows the dual where S is
// well conditioned.
Outcome small_oracle() {
  SmallInstance unit = small_instance(1.0), wide = small_instance(8.0);
  bool ops = unit.operators <= 1e-9 && wide.operators <= 1e-9;
  bool dual = unit.dual <= 1e-8;
  return {ops && dual,
          fmt("operators vs dense: %.2e (support scale 1), %.2e (scale 8) (<= 1e-9); dual vs least squares %.2e at "
              "scale 1 (<= 1e-8%s), %.2e at scale 8",
              unit.operators, wide.operators, unit.dual, std::isinf(unit.dual) ? ", CG did not converge" : "",
              wide.dual)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"adjoint and Gram", adjoint_and_gram},
      {"norm invariance", norm_invariance},
      {"projection equivalence", projection_equivalence},
      {"smooth-part rate", smooth_rate},
      {"main rate", main_rate},
      {"decay envelopes", decay_envelopes},
      {"counting bounds", counting},
      {"generator flags", generator_flags},
      {"small-instance oracle", small_oracle},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << id << " (" << criteria[k].first << "): " << (o.pass ? "PASS" : "FAIL") << " | "
              << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
