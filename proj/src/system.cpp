#include "shearbd/system.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <string>

#include "shearbd/error.hpp"
#include "shearbd/parallel.hpp"

namespace shearbd {

const char* cone_name(Cone c) {
  switch (c) {
    case Cone::Low: return "LOW";
    case Cone::H: return "H";
    case Cone::V: return "V";
  }
  return "?";
}

int shear_bound(int j) {
  if (j % 2 == 0) return 1 << (j / 2);
  return static_cast<int>(std::ceil(std::ldexp(std::sqrt(2.0), (j - 1) / 2)));
}

const std::vector<std::size_t>& CoefficientTable::magnitude_order() const {
  if (order_.size() != values.size()) {
    order_.resize(values.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      double ma = std::abs(values[a]), mb = std::abs(values[b]);
      if (ma != mb) return ma > mb;
      return indices && (*indices)[a] < (*indices)[b];
    });
  }
  return order_;
}

CoefficientTable make_table(std::vector<ShearletIndex> indices, std::vector<double> values) {
  std::vector<std::size_t> perm(indices.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return indices[a] < indices[b]; });
  auto sorted = std::make_shared<std::vector<ShearletIndex>>();
  CoefficientTable t;
  for (std::size_t p : perm) {
    sorted->push_back(indices[p]);
    t.values.push_back(values[p]);
  }
  t.indices = std::move(sorted);
  return t;
}

namespace {

int nice_fft_size(int x) {
  for (int m = std::max(x, 1);; ++m) {
    int r = m;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t reals) : real(fftw_alloc_real(reals)), cplx(fftw_alloc_complex(reals / 2 + 1)) {}
  ~FftwBuffer() {
    fftw_free(real);
    fftw_free(cplx);
  }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  double* real;
  fftw_complex* cplx;
};

}  // namespace

struct ShearletSystem::Family {
  Cone cone = Cone::Low;
  int j = 0;
  bool transposed = false;
  const Sampled1D* first = nullptr;
  const Sampled1D* second = nullptr;
  double alpha = 0, gamma = 0, amp = 0;
  int Q = 1;
  int w1 = 0;      // window width of the first factor in pixels
  int Lp = 0;      // column FFT length
  int lag_lo = 0;  // smallest stored lag
  int lag_count = 0;
  std::vector<std::vector<std::complex<double>>> spectra;  // per phase
  std::vector<std::size_t> slice_ids;
  double step1 = 0.0;     // pixels per unit of u along x1
  long integral_step = 0;  // step1 when it is a positive integer, else 0
  // Column taps shared by all translations with the same T2 in one slice.
  struct Tap {
    int x2;
    int q;
    long pbase;
    double w;
  };
  std::vector<std::vector<Tap>> plans;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Family() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }

  int half() const { return Lp / 2 + 1; }

  // lag(x2) = T1 - kappa (x2 - T2) with T1 = step1 u - 1/2, rounded half up to
  // 1/Q pixel and split into whole pixels p and phase q. With an integral
  // step the u-dependence is pulled out exactly, so every translation of a
  // slice sees the same rounding pattern.
  void lag(long u, double T2, double kappa, int x2, long& p, int& q) const {
    if (integral_step > 0) {
      long r = static_cast<long>(std::floor(Q * (-0.5 - kappa * (x2 - T2)) + 0.5));
      long whole = floor_div(r, Q);
      p = integral_step * u + whole;
      q = static_cast<int>(r - whole * Q);
      return;
    }
    long lq = static_cast<long>(std::floor(Q * (step1 * u - 0.5 - kappa * (x2 - T2)) + 0.5));
    p = floor_div(lq, Q);
    q = static_cast<int>(lq - p * Q);
  }

  void column_range(double T2, int n, int& lo, int& hi) const {
    lo = std::max(0, static_cast<int>(std::floor(T2)) + 1);
    hi = std::min(n - 1, static_cast<int>(std::ceil(T2 + second->hi / gamma)) - 1 + 1);
  }
};

namespace {

using FamilyPtr = std::unique_ptr<ShearletSystem::Family>;

// Correlations C_q(x2, p) = sum_x1 f(x1, x2) g_q(x1 - p) for every column.
std::vector<std::vector<double>> column_correlations(const ShearletSystem::Family& fam, const ImageGrid& f,
                                                     bool transpose) {
  const int n = f.n;
  std::vector<std::vector<double>> C(fam.Q, std::vector<double>(static_cast<std::size_t>(n) * fam.lag_count, 0.0));
  const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(n), 4 * thread_limit());
  parallel_for(chunks, [&](std::size_t chunk) {
    FftwBuffer buf(fam.Lp);
    std::vector<std::complex<double>> spec(fam.half());
    for (int x2 = static_cast<int>(chunk); x2 < n; x2 += static_cast<int>(chunks)) {
      std::fill(buf.real, buf.real + fam.Lp, 0.0);
      bool any = false;
      for (int x1 = 0; x1 < n; ++x1) {
        double v = transpose ? f.at(x2, x1) : f.at(x1, x2);
        buf.real[x1] = v;
        any = any || v != 0.0;
      }
      if (!any) continue;
      fftw_execute_dft_r2c(fam.r2c, buf.real, buf.cplx);
      for (int h = 0; h < fam.half(); ++h) spec[h] = {buf.cplx[h][0], buf.cplx[h][1]};
      for (int q = 0; q < fam.Q; ++q) {
        const auto& g = fam.spectra[q];
        for (int h = 0; h < fam.half(); ++h) {
          std::complex<double> v = spec[h] * std::conj(g[h]);
          buf.cplx[h][0] = v.real();
          buf.cplx[h][1] = v.imag();
        }
        fftw_execute_dft_c2r(fam.c2r, buf.cplx, buf.real);
        double* out = C[q].data() + static_cast<std::size_t>(x2) * fam.lag_count;
        const double scale = 1.0 / fam.Lp;
        for (int i = 0; i < fam.lag_count; ++i) {
          long p = fam.lag_lo + i;
          long idx = ((p % fam.Lp) + fam.Lp) % fam.Lp;
          out[i] = buf.real[idx] * scale;
        }
      }
    }
  });
  return C;
}

}  // namespace

ShearletSystem::ShearletSystem(std::shared_ptr<const GeneratorSet> gen, SystemParams params)
    : gen_(std::move(gen)), params_(params) {
  const int n = params_.n;
  if (n < 8 || (n & (n - 1)) != 0) throw Error(ErrorCode::InvalidSystem, "n must be a power of two >= 8");
  if (!(params_.c > 0.0)) throw Error(ErrorCode::InvalidSystem, "sampling constant c must be positive");
  if (params_.j_max < 0) throw Error(ErrorCode::InvalidSystem, "j_max must be nonnegative");
  if (!(params_.support_scale > 0.0)) throw Error(ErrorCode::InvalidSystem, "support scale must be positive");
  const double sigma = params_.support_scale, c = params_.c;

  auto make_family = [&](Cone cone, int j, double step1) {
    auto fam = std::make_unique<Family>();
    fam->step1 = step1;
    if (step1 >= 1.0 && std::abs(step1 - std::round(step1)) < 1e-12) fam->integral_step = std::lround(step1);
    fam->cone = cone;
    fam->j = j;
    fam->transposed = cone == Cone::V;
    if (cone == Cone::Low) {
      fam->first = &gen_->psi2;
      fam->second = &gen_->psi2;
      fam->alpha = sigma / n;
      fam->gamma = sigma / n;
      fam->amp = sigma;
    } else {
      fam->first = &gen_->psi1;
      fam->second = &gen_->psi2;
      fam->alpha = sigma * std::ldexp(1.0, j) / n;
      fam->gamma = sigma * std::pow(2.0, j / 2.0) / n;
      fam->amp = sigma * std::pow(2.0, 0.75 * j);
    }
    // Keep the x1 offset error below 1/64 of a generator unit.
    fam->Q = std::clamp(static_cast<int>(std::ceil(32.0 * fam->alpha - 1e-12)), 1, std::max(1, params_.subpixel_cap));
    fam->w1 = static_cast<int>(std::ceil(fam->first->hi / fam->alpha)) + 2;
    fam->Lp = nice_fft_size(n + fam->w1);
    fam->lag_lo = -(fam->w1 - 1);
    fam->lag_count = n - fam->lag_lo;

    FftwBuffer buf(fam->Lp);
    fam->r2c = fftw_plan_dft_r2c_1d(fam->Lp, buf.real, buf.cplx, FFTW_ESTIMATE);
    fam->c2r = fftw_plan_dft_c2r_1d(fam->Lp, buf.cplx, buf.real, FFTW_ESTIMATE);
    for (int q = 0; q < fam->Q; ++q) {
      std::fill(buf.real, buf.real + fam->Lp, 0.0);
      for (int e = 0; e < fam->w1; ++e) buf.real[e] = (*fam->first)(fam->alpha * (e - static_cast<double>(q) / fam->Q));
      fftw_execute_dft_r2c(fam->r2c, buf.real, buf.cplx);
      std::vector<std::complex<double>> s(fam->half());
      for (int h = 0; h < fam->half(); ++h) s[h] = {buf.cplx[h][0], buf.cplx[h][1]};
      fam->spectra.push_back(std::move(s));
    }
    families_.push_back(std::move(fam));
    return static_cast<int>(families_.size()) - 1;
  };

  // Does the atom with frame translation (u, T2) have a nonzero sample on the grid?
  auto touches = [&](const Family& fam, long u, double T2, double kappa) {
    int lo, hi;
    fam.column_range(T2, n, lo, hi);
    for (int x2 = lo; x2 <= hi; ++x2) {
      if ((*fam.second)(fam.gamma * (x2 - T2)) == 0.0) continue;
      long p;
      int q;
      fam.lag(u, T2, kappa, x2, p, q);
      double start = p + static_cast<double>(q) / fam.Q;  // first factor vanishes at start and start + hi/alpha
      double end = start + fam.first->hi / fam.alpha;
      int a = std::max(0, static_cast<int>(std::floor(start)) + 1);
      int b = std::min(n - 1, static_cast<int>(std::ceil(end)) - 1);
      if (a <= b) return true;
      if (fam.first->values.front() != 0.0 && start >= 0 && start <= n - 1 && std::floor(start) == start) return true;
    }
    return false;
  };

  struct Found {
    std::array<int, 2> m;
    long u;
    double T2;
    bool operator<(const Found& o) const { return m < o.m; }
  };
  auto indices = std::make_shared<std::vector<ShearletIndex>>();
  auto add_slice = [&](Cone cone, int j, int k, int fam_id, double kappa, std::vector<Found>& found) {
    std::sort(found.begin(), found.end());
    Slice s;
    s.cone = cone;
    s.j = j;
    s.k = k;
    s.kappa = kappa;
    s.offset = indices->size();
    s.count = found.size();
    s.family = fam_id;
    Family& fam = *families_[fam_id];
    std::map<double, std::uint32_t> plan_of_T2;
    for (const Found& f : found) {
      indices->push_back({cone, j, k, f.m[0], f.m[1]});
      U_.push_back(f.u);
      T2_.push_back(f.T2);
      std::uint32_t plan = 0;
      if (fam.integral_step > 0) {
        auto it = plan_of_T2.find(f.T2);
        if (it == plan_of_T2.end()) {
          std::vector<Family::Tap> taps;
          int lo, hi;
          fam.column_range(f.T2, n, lo, hi);
          for (int x2 = lo; x2 <= hi; ++x2) {
            double v2 = (*fam.second)(fam.gamma * (x2 - f.T2));
            if (v2 == 0.0) continue;
            long p;
            int q;
            fam.lag(0, f.T2, kappa, x2, p, q);
            taps.push_back({x2, q, p, fam.amp * v2});
          }
          fam.plans.push_back(std::move(taps));
          it = plan_of_T2.emplace(f.T2, static_cast<std::uint32_t>(fam.plans.size() - 1)).first;
        }
        plan = it->second;
      }
      plan_.push_back(plan);
    }
    fam.slice_ids.push_back(slices_.size());
    slices_.push_back(s);
  };

  {  // LOW: phi(sigma x - c m)
    int fam_id = make_family(Cone::Low, 0, n * c / sigma);
    const Family& fam = *families_[fam_id];
    double L = gen_->psi2.hi;
    int mlo = static_cast<int>(std::floor(-L / c)) - 1, mhi = static_cast<int>(std::ceil(sigma / c)) + 1;
    std::vector<Found> found;
    for (int m1 = mlo; m1 <= mhi; ++m1)
      for (int m2 = mlo; m2 <= mhi; ++m2) {
        double T2 = n * c * m2 / sigma - 0.5;
        if (touches(fam, m1, T2, 0.0)) found.push_back({{m1, m2}, m1, T2});
      }
    add_slice(Cone::Low, 0, 0, fam_id, 0.0, found);
  }

  for (Cone cone : {Cone::H, Cone::V}) {
    for (int j = 0; j <= params_.j_max; ++j) {
      // t1 = c 2^-j (m1 - k m2) / sigma, t2 = c 2^-j/2 m2 / sigma in the H frame.
      const double s2 = std::pow(2.0, j / 2.0);
      const double step1 = n * c * std::ldexp(1.0, -j) / sigma, step2 = n * c / (s2 * sigma);
      int fam_id = make_family(cone, j, step1);
      const Family& fam = *families_[fam_id];
      const int K = shear_bound(j);
      for (int k = -K; k <= K; ++k) {
        const double kappa = k / s2;
        double ext2 = fam.second->hi / fam.gamma;
        double ext1 = fam.first->hi / fam.alpha + std::abs(kappa) * ext2;
        int m2lo = static_cast<int>(std::floor((-ext2 - 1.0) / step2)) - 1;
        int m2hi = static_cast<int>(std::ceil((n + 1.0) / step2)) + 1;
        int ulo = static_cast<int>(std::floor((-ext1 - 1.0) / step1)) - 1;
        int uhi = static_cast<int>(std::ceil((n + 1.0 + std::abs(kappa) * ext2) / step1)) + 1;
        std::vector<Found> found;
        for (int m2 = m2lo; m2 <= m2hi; ++m2)
          for (int u = ulo; u <= uhi; ++u) {
            double T2 = step2 * m2 - 0.5;
            if (!touches(fam, u, T2, kappa)) continue;
            int m1 = u + k * m2;
            if (cone == Cone::H)
              found.push_back({{m1, m2}, u, T2});
            else
              found.push_back({{m2, m1}, u, T2});  // V: same frame geometry, swapped m
          }
        add_slice(cone, j, k, fam_id, kappa, found);
      }
    }
  }
  indices_ = std::move(indices);
}

ShearletSystem::~ShearletSystem() = default;

std::optional<std::size_t> ShearletSystem::slice_of(Cone cone, int j, int k) const {
  for (std::size_t s = 0; s < slices_.size(); ++s)
    if (slices_[s].cone == cone && slices_[s].j == j && slices_[s].k == k) return s;
  return std::nullopt;
}

std::optional<std::size_t> ShearletSystem::locate(const ShearletIndex& idx) const {
  auto it = std::lower_bound(indices_->begin(), indices_->end(), idx);
  if (it == indices_->end() || !(*it == idx)) return std::nullopt;
  return static_cast<std::size_t>(it - indices_->begin());
}

AtomGeometry ShearletSystem::geometry(std::size_t pos) const {
  const ShearletIndex& idx = (*indices_)[pos];
  auto s = slice_of(idx.cone, idx.j, idx.k);
  const Slice& sl = slices_[*s];
  const Family& fam = *families_[sl.family];
  AtomGeometry g;
  g.T1 = fam.step1 * U_[pos] - 0.5;
  g.T2 = T2_[pos];
  g.alpha = fam.alpha;
  g.gamma = fam.gamma;
  g.amp = fam.amp;
  g.kappa = sl.kappa;
  g.Q = fam.Q;
  g.transposed = fam.transposed;
  g.first = fam.first;
  g.second = fam.second;
  return g;
}

ImageGrid ShearletSystem::sample_atom(const ShearletIndex& idx) const {
  auto pos = locate(idx);
  if (!pos) throw Error(ErrorCode::IndexNotInSystem, "index is not enumerated by this system");
  const Slice& sl = slices_[*slice_of(idx.cone, idx.j, idx.k)];
  const Family& fam = *families_[sl.family];
  const int n = params_.n;
  long U = U_[*pos];
  double T2 = T2_[*pos];
  ImageGrid g(n);
  int lo, hi;
  fam.column_range(T2, n, lo, hi);
  for (int x2 = lo; x2 <= hi; ++x2) {
    double v2 = (*fam.second)(fam.gamma * (x2 - T2));
    if (v2 == 0.0) continue;
    long p;
    int q;
    fam.lag(U, T2, sl.kappa, x2, p, q);
    for (int x1 = 0; x1 < n; ++x1) {
      double v = fam.amp * v2 * (*fam.first)(fam.alpha * (x1 - p - static_cast<double>(q) / fam.Q));
      if (fam.transposed)
        g.at(x2, x1) = v;
      else
        g.at(x1, x2) = v;
    }
  }
  return g;
}

std::vector<ShearletSystem::Run> ShearletSystem::footprint(std::size_t pos) const {
  const ShearletIndex& idx = (*indices_)[pos];
  const Slice& sl = slices_[*slice_of(idx.cone, idx.j, idx.k)];
  const Family& fam = *families_[sl.family];
  const int n = params_.n;
  long U = U_[pos];
  double T2 = T2_[pos];
  std::vector<Run> runs;
  int lo, hi;
  fam.column_range(T2, n, lo, hi);
  for (int x2 = lo; x2 <= hi; ++x2) {
    if ((*fam.second)(fam.gamma * (x2 - T2)) == 0.0) continue;
    long p;
    int q;
    fam.lag(U, T2, sl.kappa, x2, p, q);
    double start = p + static_cast<double>(q) / fam.Q;
    int a = std::max(0, static_cast<int>(std::ceil(start)));
    int b = std::min(n - 1, static_cast<int>(std::floor(start + fam.first->hi / fam.alpha)));
    if (a <= b) runs.push_back({x2, a, b});
  }
  return runs;
}

double ShearletSystem::atom_norm_unclipped(const ShearletIndex& idx) const {
  auto pos = locate(idx);
  if (!pos) throw Error(ErrorCode::IndexNotInSystem, "index is not enumerated by this system");
  const Slice& sl = slices_[*slice_of(idx.cone, idx.j, idx.k)];
  const Family& fam = *families_[sl.family];
  long U = U_[*pos];
  double T2 = T2_[*pos];
  double total = 0.0;
  int lo = static_cast<int>(std::floor(T2)) + 1, hi = static_cast<int>(std::ceil(T2 + fam.second->hi / fam.gamma));
  for (int x2 = lo; x2 <= hi; ++x2) {
    double v2 = (*fam.second)(fam.gamma * (x2 - T2));
    if (v2 == 0.0) continue;
    long p;
    int q;
    fam.lag(U, T2, sl.kappa, x2, p, q);
    double col = 0.0;
    for (int e = 0; e < fam.w1; ++e) {
      double v = (*fam.first)(fam.alpha * (e - static_cast<double>(q) / fam.Q));
      col += v * v;
    }
    total += v2 * v2 * col;
  }
  double n = params_.n;
  return std::abs(fam.amp) * std::sqrt(total) / n;
}

void ShearletSystem::check_grid(const ImageGrid& f) const {
  if (f.n != params_.n || f.data.size() != static_cast<std::size_t>(f.n) * f.n)
    throw Error(ErrorCode::GridMismatch,
                "grid has n = " + std::to_string(f.n) + ", system expects " + std::to_string(params_.n));
}

std::vector<double> ShearletSystem::analyze_values(const ImageGrid& f) const {
  check_grid(f);
  const int n = params_.n;
  const double h2 = 1.0 / (static_cast<double>(n) * n);
  std::vector<double> out(size(), 0.0);
  for (const auto& famp : families_) {
    const Family& fam = *famp;
    auto C = column_correlations(fam, f, fam.transposed);
    for (std::size_t sid : fam.slice_ids) {
      const Slice& sl = slices_[sid];
      parallel_for(sl.count, [&](std::size_t t) {
        std::size_t pos = sl.offset + t;
        long U = U_[pos];
        if (fam.integral_step > 0) {
          const long shift = fam.integral_step * U - fam.lag_lo;
          double acc = 0.0;
          for (const Family::Tap& tap : fam.plans[plan_[pos]]) {
            long i = tap.pbase + shift;
            if (i < 0 || i >= fam.lag_count) continue;
            acc += tap.w * C[tap.q][static_cast<std::size_t>(tap.x2) * fam.lag_count + i];
          }
          out[pos] = h2 * acc;
          return;
        }
        double T2 = T2_[pos];
        int lo, hi;
        fam.column_range(T2, n, lo, hi);
        double acc = 0.0;
        for (int x2 = lo; x2 <= hi; ++x2) {
          double v2 = (*fam.second)(fam.gamma * (x2 - T2));
          if (v2 == 0.0) continue;
          long p;
          int q;
          fam.lag(U, T2, sl.kappa, x2, p, q);
          if (p < fam.lag_lo || p >= n) continue;
          acc += v2 * C[q][static_cast<std::size_t>(x2) * fam.lag_count + (p - fam.lag_lo)];
        }
        out[pos] = h2 * fam.amp * acc;
      });
    }
  }
  return out;
}

ImageGrid ShearletSystem::synthesize_values(const std::vector<double>& theta) const {
  if (theta.size() != size()) throw Error(ErrorCode::GridMismatch, "coefficient vector does not match the system");
  const int n = params_.n;
  std::vector<ImageGrid> parts(families_.size());
  parallel_for(families_.size(), [&](std::size_t fi) {
    const Family& fam = *families_[fi];
    std::vector<std::vector<double>> D(fam.Q, std::vector<double>(static_cast<std::size_t>(n) * fam.lag_count, 0.0));
    std::vector<char> used(n, 0);
    bool any = false;
    for (std::size_t sid : fam.slice_ids) {
      const Slice& sl = slices_[sid];
      for (std::size_t t = 0; t < sl.count; ++t) {
        std::size_t pos = sl.offset + t;
        double th = theta[pos];
        if (th == 0.0) continue;
        any = true;
        long U = U_[pos];
        if (fam.integral_step > 0) {
          const long shift = fam.integral_step * U - fam.lag_lo;
          for (const Family::Tap& tap : fam.plans[plan_[pos]]) {
            long i = tap.pbase + shift;
            if (i < 0 || i >= fam.lag_count) continue;
            D[tap.q][static_cast<std::size_t>(tap.x2) * fam.lag_count + i] += th * tap.w;
            used[tap.x2] = 1;
          }
          continue;
        }
        double T2 = T2_[pos];
        int lo, hi;
        fam.column_range(T2, n, lo, hi);
        for (int x2 = lo; x2 <= hi; ++x2) {
          double v2 = (*fam.second)(fam.gamma * (x2 - T2));
          if (v2 == 0.0) continue;
          long p;
          int q;
          fam.lag(U, T2, sl.kappa, x2, p, q);
          if (p < fam.lag_lo || p >= n) continue;
          D[q][static_cast<std::size_t>(x2) * fam.lag_count + (p - fam.lag_lo)] += th * fam.amp * v2;
          used[x2] = 1;
        }
      }
    }
    ImageGrid part(n);
    if (!any) {
      parts[fi] = std::move(part);
      return;
    }
    FftwBuffer buf(fam.Lp);
    std::vector<std::complex<double>> acc(fam.half());
    for (int x2 = 0; x2 < n; ++x2) {
      if (!used[x2]) continue;
      std::fill(acc.begin(), acc.end(), std::complex<double>(0.0));
      for (int q = 0; q < fam.Q; ++q) {
        std::fill(buf.real, buf.real + fam.Lp, 0.0);
        const double* d = D[q].data() + static_cast<std::size_t>(x2) * fam.lag_count;
        for (int i = 0; i < fam.lag_count; ++i) {
          long p = fam.lag_lo + i;
          buf.real[((p % fam.Lp) + fam.Lp) % fam.Lp] += d[i];
        }
        fftw_execute_dft_r2c(fam.r2c, buf.real, buf.cplx);
        const auto& g = fam.spectra[q];
        for (int h = 0; h < fam.half(); ++h) acc[h] += std::complex<double>(buf.cplx[h][0], buf.cplx[h][1]) * g[h];
      }
      for (int h = 0; h < fam.half(); ++h) {
        buf.cplx[h][0] = acc[h].real();
        buf.cplx[h][1] = acc[h].imag();
      }
      fftw_execute_dft_c2r(fam.c2r, buf.cplx, buf.real);
      const double scale = 1.0 / fam.Lp;
      for (int x1 = 0; x1 < n; ++x1) {
        if (fam.transposed)
          part.at(x2, x1) = buf.real[x1] * scale;
        else
          part.at(x1, x2) = buf.real[x1] * scale;
      }
    }
    parts[fi] = std::move(part);
  });
  ImageGrid out(n);
  for (const ImageGrid& p : parts)
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += p.data[i];
  return out;
}

CoefficientTable ShearletSystem::analyze(const ImageGrid& f) const {
  CoefficientTable t;
  t.indices = indices_;
  t.values = analyze_values(f);
  return t;
}

ImageGrid ShearletSystem::synthesize(const CoefficientTable& theta) const {
  std::vector<double> v(size(), 0.0);
  if (theta.indices == indices_) {
    v = theta.values;
  } else {
    for (std::size_t i = 0; i < theta.size(); ++i) {
      auto pos = locate(theta.index(i));
      if (!pos) throw Error(ErrorCode::IndexNotInSystem, "coefficient table refers to an index outside the system");
      v[*pos] += theta.values[i];
    }
  }
  return synthesize_values(v);
}

std::vector<ShearletIndex> enumerate_indices(double c, int j_max, int n, std::shared_ptr<const GeneratorSet> gen) {
  SystemParams p;
  p.c = c;
  p.j_max = j_max;
  p.n = n;
  ShearletSystem sys(std::move(gen), p);
  return sys.indices();
}

}  // namespace shearbd
