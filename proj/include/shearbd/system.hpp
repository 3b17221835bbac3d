#pragma once

#include <compare>
#include <cstdint>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "shearbd/generators.hpp"
#include "shearbd/grid.hpp"

namespace shearbd {

enum class Cone : int { Low = 0, H = 1, V = 2 };

const char* cone_name(Cone c);

struct ShearletIndex {
  Cone cone = Cone::Low;
  int j = 0;  // 0 for LOW
  int k = 0;  // 0 for LOW
  int m1 = 0;
  int m2 = 0;

  friend auto operator<=>(const ShearletIndex&, const ShearletIndex&) = default;
};

// ceil(2^(j/2)) computed without floating point surprises at even j.
int shear_bound(int j);

struct SystemParams {
  double c = 1.0;
  int j_max = 4;
  int n = 256;
  // Generators are used as sigma * psi(sigma * y); 1 is the plain generator.
  double support_scale = 1.0;
  // Cap on the number of sub-pixel phases used for the x1 offset of an atom.
  int subpixel_cap = 4;
};

struct CoefficientTable {
  std::shared_ptr<const std::vector<ShearletIndex>> indices;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  const ShearletIndex& index(std::size_t i) const { return (*indices)[i]; }
  // Positions sorted by decreasing magnitude, ties by increasing index. Cached.
  const std::vector<std::size_t>& magnitude_order() const;

 private:
  mutable std::vector<std::size_t> order_;
};

CoefficientTable make_table(std::vector<ShearletIndex> indices, std::vector<double> values);

// One shear of one cone at one scale: all translations share the sampled
// factor tables and differ only by their offsets.
struct Slice {
  Cone cone = Cone::Low;
  int j = 0;
  int k = 0;
  double kappa = 0.0;  // x1-offset per unit x2-offset, k 2^(-j/2)
  std::size_t offset = 0;
  std::size_t count = 0;
  int family = 0;
};

// Digital atom parameters. The atom value at pixel (x1, x2) is
//   amp * second(gamma * (x2 - T2)) * first(alpha * (x1 - lag(x2)))
// with lag(x2) = T1 - kappa * (x2 - T2) rounded to 1/Q pixel. V atoms are the
// transposes of H atoms with swapped m.
struct AtomGeometry {
  double T1 = 0.0, T2 = 0.0;  // translation in pixel coordinates (n t - 1/2)
  double alpha = 0.0, gamma = 0.0, amp = 0.0, kappa = 0.0;
  int Q = 1;
  bool transposed = false;
  const Sampled1D* first = nullptr;
  const Sampled1D* second = nullptr;
};

class ShearletSystem {
 public:
  ShearletSystem(std::shared_ptr<const GeneratorSet> gen, SystemParams params);
  ~ShearletSystem();
  ShearletSystem(const ShearletSystem&) = delete;
  ShearletSystem& operator=(const ShearletSystem&) = delete;

  const SystemParams& params() const { return params_; }
  int n() const { return params_.n; }
  const GeneratorSet& generators() const { return *gen_; }
  std::shared_ptr<const GeneratorSet> generator_ptr() const { return gen_; }
  std::size_t size() const { return indices_->size(); }
  const std::vector<ShearletIndex>& indices() const { return *indices_; }
  std::shared_ptr<const std::vector<ShearletIndex>> index_ptr() const { return indices_; }
  const std::vector<Slice>& slices() const { return slices_; }
  std::optional<std::size_t> locate(const ShearletIndex& idx) const;
  std::optional<std::size_t> slice_of(Cone cone, int j, int k) const;

  AtomGeometry geometry(std::size_t position) const;
  ImageGrid sample_atom(const ShearletIndex& idx) const;
  // Discrete L2 norm of the atom on the unbounded pixel lattice (no clipping).
  double atom_norm_unclipped(const ShearletIndex& idx) const;

  // Pixel runs covering the sampled support of the atom at `position`. For
  // untransposed atoms a run is column `line`, rows [lo, hi]; for V atoms it
  // is row `line`, columns [lo, hi].
  struct Run {
    int line, lo, hi;
  };
  std::vector<Run> footprint(std::size_t position) const;

  std::vector<double> analyze_values(const ImageGrid& f) const;
  ImageGrid synthesize_values(const std::vector<double>& theta) const;
  CoefficientTable analyze(const ImageGrid& f) const;
  // Entries whose index is not in the system raise IndexNotInSystem.
  ImageGrid synthesize(const CoefficientTable& theta) const;

  struct Family;

 private:
  void check_grid(const ImageGrid& f) const;

  std::shared_ptr<const GeneratorSet> gen_;
  SystemParams params_;
  std::shared_ptr<const std::vector<ShearletIndex>> indices_;
  std::vector<long> U_;            // x1 lattice coordinate in the family frame
  std::vector<double> T2_;         // x2 offset in pixels
  std::vector<std::uint32_t> plan_;  // column plan, integral families only
  std::vector<Slice> slices_;
  std::vector<std::unique_ptr<Family>> families_;
};

std::vector<ShearletIndex> enumerate_indices(double c, int j_max, int n, std::shared_ptr<const GeneratorSet> gen);

inline CoefficientTable analyze(const ImageGrid& f, const ShearletSystem& sys) { return sys.analyze(f); }
inline ImageGrid synthesize(const CoefficientTable& t, const ShearletSystem& sys) { return sys.synthesize(t); }
inline ImageGrid sample_atom(const ShearletSystem& sys, const ShearletIndex& idx) { return sys.sample_atom(idx); }

}  // namespace shearbd
