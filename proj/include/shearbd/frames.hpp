#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "shearbd/geometry.hpp"
#include "shearbd/grid.hpp"
#include "shearbd/system.hpp"

namespace shearbd {

// Analysis/synthesis pair on an n x n grid. Everything in this header works on
// views so that masked, restricted or duplicated systems share one code path.
struct FrameView {
  int n = 0;
  std::size_t size = 0;
  std::function<std::vector<double>(const ImageGrid&)> analyze;
  std::function<ImageGrid(const std::vector<double>&)> synthesize;
};

FrameView view_of(const ShearletSystem& sys);

struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
  int iterations_A = 0;  // inverse iteration steps, summed over trials
  int iterations_B = 0;  // power iteration steps, summed over trials
  int cg_iterations = 0;
  double tol = 0.0;
  int trials = 0;
  bool converged = true;
  double ratio() const { return B / A; }
};

struct BoundsOptions {
  int trials = 1;
  double tol = 1e-3;
  int max_power_iterations = 500;
  int max_inverse_iterations = 30;
  int max_cg_iterations = 500;
  std::uint64_t seed = 1;
};

ImageGrid frame_apply(const ImageGrid& f, const FrameView& sys);
ImageGrid frame_apply(const ImageGrid& f, const ShearletSystem& sys);

// Power iteration for B, inverse iteration with CG solves for A, both started
// inside the range of S. Throws NotAFrame when A < 1e-10 B.
FrameBounds estimate_bounds(const FrameView& sys, const BoundsOptions& opt);
FrameBounds estimate_bounds(const ShearletSystem& sys, int trials, double tol);

class ProjectedSystem {
 public:
  ProjectedSystem(const ShearletSystem& base, const DomainSpec& omega, int supersample = 4);
  // Projection of an already projected system: masks multiply.
  ProjectedSystem(const ProjectedSystem& inner, const DomainSpec& omega, int supersample = 4);

  const ShearletSystem& base() const { return *base_; }
  int n() const { return base_->n(); }
  std::size_t size() const { return base_->size(); }
  const ImageGrid& mask() const { return mask_; }
  bool is_zero(std::size_t position) const { return zero_[position] != 0; }
  std::size_t zero_count() const;

  std::vector<double> analyze_values(const ImageGrid& f) const;
  ImageGrid synthesize_values(const std::vector<double>& theta) const;
  CoefficientTable analyze(const ImageGrid& f) const;
  ImageGrid synthesize(const CoefficientTable& theta) const;
  ImageGrid sample_atom(const ShearletIndex& idx) const;
  FrameView view() const;

 private:
  void flag_zero_atoms();

  const ShearletSystem* base_;
  ImageGrid mask_;
  std::vector<char> zero_;
};

ProjectedSystem project_system(const ShearletSystem& sys, const DomainSpec& omega);
ImageGrid frame_apply(const ImageGrid& f, const ProjectedSystem& sys);

struct EquivalenceReport {
  int trials = 0;
  double max_table_difference = 0.0;  // max |theta_omega - theta_base|
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::vector<double> ratios;
  double A = 0.0, B = 0.0, delta = 0.05;
  bool tables_identical = true;
  bool ratios_inside = true;
  bool passed() const { return tables_identical && ratios_inside; }
};

// Random smooth fields supported on cells lying entirely inside omega.
ImageGrid random_interior_field(const ProjectedSystem& proj, std::uint64_t seed);

// Throws EquivalenceViolated when strict and a check fails.
EquivalenceReport check_projection_equivalence(const ProjectedSystem& proj, const FrameBounds& bounds, int trials,
                                               std::uint64_t seed = 7, bool strict = true);

struct CgResult {
  ImageGrid x;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Conjugate gradients on S x = b from x = 0, so singular S yields the
// minimum-norm solution when b lies in the range.
CgResult conjugate_gradient(const FrameView& sys, const ImageGrid& b, double tol, int max_iterations);

// S^{-1} synthesize(theta). Throws CGNotConverged.
ImageGrid dual_reconstruct(const std::vector<double>& theta, const FrameView& sys, double tol = 1e-6,
                           int max_iterations = 500);
ImageGrid dual_reconstruct(const CoefficientTable& theta, const ShearletSystem& sys, double tol = 1e-6,
                           int max_iterations = 500);

}  // namespace shearbd
