#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "shearbd/generators.hpp"
#include "shearbd/grid.hpp"

namespace testing {

// Building the default generators costs a cascade per factor; share one copy.
inline std::shared_ptr<const shearbd::GeneratorSet> default_generators() {
  static auto gen = std::make_shared<const shearbd::GeneratorSet>(shearbd::build_generator_set());
  return gen;
}

inline shearbd::ImageGrid random_grid(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01;
  shearbd::ImageGrid g(n);
  for (double& v : g.data) v = N01(rng);
  return g;
}

inline std::vector<double> random_vector(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01;
  std::vector<double> v(size);
  for (double& x : v) x = N01(rng);
  return v;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing
