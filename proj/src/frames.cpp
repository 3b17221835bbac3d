#include "shearbd/frames.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "shearbd/cartoon.hpp"
#include "shearbd/error.hpp"
#include "shearbd/parallel.hpp"

namespace shearbd {

namespace {

double dot(const ImageGrid& a, const ImageGrid& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
  return s;
}

void axpy(double a, const ImageGrid& x, ImageGrid& y) {
  for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] += a * x.data[i];
}

void scale(ImageGrid& x, double a) {
  for (double& v : x.data) v *= a;
}

ImageGrid random_grid(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  ImageGrid g(n);
  for (double& v : g.data) v = nd(rng);
  return g;
}

// Everything below measures norms with the grid inner product.
double norm(const ImageGrid& g) { return grid_norm(g); }

}  // namespace

FrameView view_of(const ShearletSystem& sys) {
  FrameView v;
  v.n = sys.n();
  v.size = sys.size();
  v.analyze = [&sys](const ImageGrid& f) { return sys.analyze_values(f); };
  v.synthesize = [&sys](const std::vector<double>& t) { return sys.synthesize_values(t); };
  return v;
}

ImageGrid frame_apply(const ImageGrid& f, const FrameView& sys) { return sys.synthesize(sys.analyze(f)); }
ImageGrid frame_apply(const ImageGrid& f, const ShearletSystem& sys) { return frame_apply(f, view_of(sys)); }
ImageGrid frame_apply(const ImageGrid& f, const ProjectedSystem& sys) { return frame_apply(f, sys.view()); }

CgResult conjugate_gradient(const FrameView& sys, const ImageGrid& b, double tol, int max_iterations) {
  CgResult out;
  out.x = ImageGrid(b.n);
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  ImageGrid r = b, p = b;
  double rr = dot(r, r);
  for (int it = 0; it < max_iterations; ++it) {
    if (std::sqrt(rr) <= tol * bnorm) break;
    ImageGrid Sp = frame_apply(p, sys);
    double pSp = dot(p, Sp);
    if (!(pSp > 0.0)) break;  // lost positivity: stop with what we have
    double a = rr / pSp;
    axpy(a, p, out.x);
    axpy(-a, Sp, r);
    double rr_new = dot(r, r);
    for (std::size_t i = 0; i < p.data.size(); ++i) p.data[i] = r.data[i] + (rr_new / rr) * p.data[i];
    rr = rr_new;
    out.iterations = it + 1;
  }
  out.relative_residual = std::sqrt(rr) / bnorm;
  out.converged = out.relative_residual <= tol;
  return out;
}

ImageGrid dual_reconstruct(const std::vector<double>& theta, const FrameView& sys, double tol, int max_iterations) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidSystem, "CG tolerance must be positive");
  ImageGrid b = sys.synthesize(theta);
  CgResult r = conjugate_gradient(sys, b, tol, max_iterations);
  if (!r.converged)
    throw Error(ErrorCode::CGNotConverged, "relative residual " + std::to_string(r.relative_residual) + " after " +
                                               std::to_string(r.iterations) + " iterations");
  return std::move(r.x);
}

ImageGrid dual_reconstruct(const CoefficientTable& theta, const ShearletSystem& sys, double tol, int max_iterations) {
  std::vector<double> v(sys.size(), 0.0);
  if (theta.indices == sys.index_ptr()) {
    v = theta.values;
  } else {
    for (std::size_t i = 0; i < theta.size(); ++i) {
      auto pos = sys.locate(theta.index(i));
      if (!pos) throw Error(ErrorCode::IndexNotInSystem, "coefficient outside the system");
      v[*pos] += theta.values[i];
    }
  }
  return dual_reconstruct(v, view_of(sys), tol, max_iterations);
}

FrameBounds estimate_bounds(const FrameView& sys, const BoundsOptions& opt) {
  if (opt.trials < 1) throw Error(ErrorCode::InvalidSystem, "bound estimation needs at least one trial");
  if (!(opt.tol > 0.0)) throw Error(ErrorCode::InvalidSystem, "bound tolerance must be positive");
  struct Trial {
    double A = 0, B = 0;
    int itA = 0, itB = 0, cg = 0;
    bool converged = true;
  };
  std::vector<Trial> trials(opt.trials);
  parallel_for(trials.size(), [&](std::size_t t) {
    Trial& tr = trials[t];
    // Start in the range of S: the reachable subspace.
    ImageGrid x = frame_apply(random_grid(sys.n, opt.seed + 7919 * t), sys);
    double xn = norm(x);
    if (xn == 0.0) throw Error(ErrorCode::NotAFrame, "frame operator annihilates a random start");
    scale(x, 1.0 / xn);
    ImageGrid start = x;

    double lambda = 0.0;
    bool done = false;
    for (int it = 0; it < opt.max_power_iterations && !done; ++it) {
      ImageGrid y = frame_apply(x, sys);
      double next = grid_dot(x, y);  // Rayleigh quotient, ||x|| = 1
      done = it > 0 && std::abs(next - lambda) < opt.tol * std::abs(next);
      lambda = next;
      double yn = norm(y);
      if (yn == 0.0) break;
      scale(y, 1.0 / yn);
      x = std::move(y);
      tr.itB = it + 1;
    }
    tr.B = lambda;
    tr.converged = done;

    x = start;
    double mu = 0.0;
    done = false;
    for (int it = 0; it < opt.max_inverse_iterations && !done; ++it) {
      CgResult r = conjugate_gradient(sys, x, opt.tol, opt.max_cg_iterations);
      tr.cg += r.iterations;
      double xy = grid_dot(x, r.x);  // approximates <x, S^-1 x>
      if (!(xy > 0.0)) {
        mu = 0.0;
        break;
      }
      double next = 1.0 / xy;
      done = r.converged && it > 0 && std::abs(next - mu) < opt.tol * next;
      mu = next;
      tr.itA = it + 1;
      double yn = norm(r.x);
      x = std::move(r.x);
      scale(x, 1.0 / yn);
      if (!r.converged) {
        tr.converged = false;
        break;
      }
    }
    tr.A = mu;
    tr.converged = tr.converged && done;
  });

  FrameBounds fb;
  fb.tol = opt.tol;
  fb.trials = opt.trials;
  fb.A = trials[0].A;
  fb.B = trials[0].B;
  for (const Trial& t : trials) {
    fb.A = std::min(fb.A, t.A);
    fb.B = std::max(fb.B, t.B);
    fb.iterations_A += t.itA;
    fb.iterations_B += t.itB;
    fb.cg_iterations += t.cg;
    fb.converged = fb.converged && t.converged;
  }
  if (!(fb.A >= 1e-10 * fb.B))
    throw Error(ErrorCode::NotAFrame, "lower bound estimate " + std::to_string(fb.A) + " against upper bound " +
                                          std::to_string(fb.B));
  return fb;
}

FrameBounds estimate_bounds(const ShearletSystem& sys, int trials, double tol) {
  BoundsOptions opt;
  opt.trials = trials;
  opt.tol = tol;
  return estimate_bounds(view_of(sys), opt);
}

ProjectedSystem::ProjectedSystem(const ShearletSystem& base, const DomainSpec& omega, int supersample)
    : base_(&base), mask_(rasterize_indicator(omega, base.n(), supersample)) {
  flag_zero_atoms();
}

ProjectedSystem::ProjectedSystem(const ProjectedSystem& inner, const DomainSpec& omega, int supersample)
    : base_(inner.base_), mask_(rasterize_indicator(omega, inner.n(), supersample)) {
  for (std::size_t i = 0; i < mask_.data.size(); ++i) mask_.data[i] *= inner.mask_.data[i];
  flag_zero_atoms();
}

void ProjectedSystem::flag_zero_atoms() {
  const int n = mask_.n;
  // Prefix sums of the mask along columns (fixed j) and rows (fixed i).
  std::vector<double> col(static_cast<std::size_t>(n) * (n + 1), 0.0), row(static_cast<std::size_t>(n) * (n + 1), 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) col[j * (n + 1) + i + 1] = col[j * (n + 1) + i] + mask_.at(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) row[i * (n + 1) + j + 1] = row[i * (n + 1) + j] + mask_.at(i, j);
  zero_.assign(base_->size(), 0);
  parallel_for(base_->size(), [&](std::size_t pos) {
    bool transposed = base_->indices()[pos].cone == Cone::V;
    const auto& sums = transposed ? row : col;
    for (const auto& r : base_->footprint(pos)) {
      const double* s = sums.data() + static_cast<std::size_t>(r.line) * (n + 1);
      if (s[r.hi + 1] - s[r.lo] > 0.0) return;
    }
    zero_[pos] = 1;
  });
}

std::size_t ProjectedSystem::zero_count() const { return static_cast<std::size_t>(std::count(zero_.begin(), zero_.end(), 1)); }

std::vector<double> ProjectedSystem::analyze_values(const ImageGrid& f) const {
  if (f.n != n()) throw Error(ErrorCode::GridMismatch, "grid does not match the projected system");
  ImageGrid g = f;
  for (std::size_t i = 0; i < g.data.size(); ++i) g.data[i] *= mask_.data[i];
  std::vector<double> v = base_->analyze_values(g);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (zero_[i]) v[i] = 0.0;
  return v;
}

ImageGrid ProjectedSystem::synthesize_values(const std::vector<double>& theta) const {
  ImageGrid g = base_->synthesize_values(theta);
  for (std::size_t i = 0; i < g.data.size(); ++i) g.data[i] *= mask_.data[i];
  return g;
}

CoefficientTable ProjectedSystem::analyze(const ImageGrid& f) const {
  CoefficientTable t;
  t.indices = base_->index_ptr();
  t.values = analyze_values(f);
  return t;
}

ImageGrid ProjectedSystem::synthesize(const CoefficientTable& theta) const {
  ImageGrid g = base_->synthesize(theta);
  for (std::size_t i = 0; i < g.data.size(); ++i) g.data[i] *= mask_.data[i];
  return g;
}

ImageGrid ProjectedSystem::sample_atom(const ShearletIndex& idx) const {
  ImageGrid g = base_->sample_atom(idx);
  for (std::size_t i = 0; i < g.data.size(); ++i) g.data[i] *= mask_.data[i];
  return g;
}

FrameView ProjectedSystem::view() const {
  FrameView v;
  v.n = n();
  v.size = size();
  v.analyze = [this](const ImageGrid& f) { return analyze_values(f); };
  v.synthesize = [this](const std::vector<double>& t) { return synthesize_values(t); };
  return v;
}

ProjectedSystem project_system(const ShearletSystem& sys, const DomainSpec& omega) { return ProjectedSystem(sys, omega); }

ImageGrid random_interior_field(const ProjectedSystem& proj, std::uint64_t seed) {
  const int n = proj.n();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Blob {
    double a, x1, x2, w;
  };
  std::vector<Blob> blobs(6);
  for (auto& b : blobs) b = {2.0 * u(rng) - 1.0, u(rng), u(rng), 0.05 + 0.2 * u(rng)};
  double f1 = 1.0 + 3.0 * u(rng), f2 = 1.0 + 3.0 * u(rng), ph = 6.283185307179586 * u(rng);
  ImageGrid g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (proj.mask().at(i, j) != 1.0) continue;  // whole cell inside the domain
      double x1 = (i + 0.5) / n, x2 = (j + 0.5) / n;
      double v = 0.3 * std::cos(f1 * x1 * 6.283185307179586 + f2 * x2 * 3.0 + ph);
      for (const auto& b : blobs) {
        double d2 = (x1 - b.x1) * (x1 - b.x1) + (x2 - b.x2) * (x2 - b.x2);
        v += b.a * std::exp(-d2 / (2.0 * b.w * b.w));
      }
      g.at(i, j) = v;
    }
  return g;
}

EquivalenceReport check_projection_equivalence(const ProjectedSystem& proj, const FrameBounds& bounds, int trials,
                                               std::uint64_t seed, bool strict) {
  EquivalenceReport rep;
  rep.trials = trials;
  rep.A = bounds.A;
  rep.B = bounds.B;
  rep.min_ratio = INFINITY;
  rep.max_ratio = 0.0;
  for (int t = 0; t < trials; ++t) {
    ImageGrid g = random_interior_field(proj, seed + 104729 * t);
    double gn = grid_norm(g);
    if (gn == 0.0) throw Error(ErrorCode::EquivalenceViolated, "domain has no interior cells");
    std::vector<double> a = proj.analyze_values(g), b = proj.base().analyze_values(g);
    double energy = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      rep.max_table_difference = std::max(rep.max_table_difference, std::abs(a[i] - b[i]));
      energy += a[i] * a[i];
    }
    double ratio = energy / (gn * gn);
    rep.ratios.push_back(ratio);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  rep.tables_identical = rep.max_table_difference <= 1e-12;
  rep.ratios_inside = rep.min_ratio >= (1.0 - rep.delta) * rep.A && rep.max_ratio <= (1.0 + rep.delta) * rep.B;
  if (strict && !rep.passed()) {
    double bad = rep.min_ratio < (1.0 - rep.delta) * rep.A ? rep.min_ratio : rep.max_ratio;
    throw Error(ErrorCode::EquivalenceViolated,
                rep.tables_identical ? "frame ratio " + std::to_string(bad) + " outside [" +
                                           std::to_string((1.0 - rep.delta) * rep.A) + ", " +
                                           std::to_string((1.0 + rep.delta) * rep.B) + "]"
                                     : "coefficient tables differ by " + std::to_string(rep.max_table_difference));
  }
  return rep;
}

}  // namespace shearbd
