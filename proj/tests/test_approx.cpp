#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "shearbd/approx.hpp"
#include "shearbd/error.hpp"
#include "support.hpp"

using namespace shearbd;
using testing::default_generators;

namespace {

CoefficientTable table(std::vector<double> values) {
  std::vector<ShearletIndex> idx;
  for (std::size_t i = 0; i < values.size(); ++i) idx.push_back({Cone::H, 1, 0, static_cast<int>(i), 0});
  return make_table(std::move(idx), std::move(values));
}

SystemParams small_frame() {
  // 32 x 32 with support scale 8: a genuine frame for the grid.
  SystemParams p;
  p.n = 32;
  p.j_max = 1;
  p.support_scale = 8.0;
  return p;
}

constexpr double kOneTermGolden = 0.121375;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::FormatError;
}

}  // namespace

TEST_SUITE("approx") {
  TEST_CASE("n largest by magnitude") {
    CoefficientTable t = table({3, -5, 2});
    CoefficientTable two = n_largest(t, 2);
    REQUIRE(two.size() == 2);
    CHECK(two.values[0] == -5);
    CHECK(two.values[1] == 3);
    CHECK(two.index(0).m1 == 1);
    CHECK(n_largest(t, 3).size() == 3);
    CHECK(code_of([&] { n_largest(t, 0); }) == ErrorCode::NOutOfRange);
    CHECK(code_of([&] { n_largest(t, 4); }) == ErrorCode::NOutOfRange);
  }

  TEST_CASE("ties go to the smaller index") {
    std::vector<ShearletIndex> idx = {{Cone::V, 0, 0, 0, 0}, {Cone::H, 2, 1, 0, 0}, {Cone::H, 2, -1, 5, 0}};
    CoefficientTable t = make_table(idx, {0.5, -0.5, 0.5});
    CoefficientTable one = n_largest(t, 1);
    CHECK(one.index(0) == ShearletIndex{Cone::H, 2, -1, 5, 0});
    CoefficientTable two = n_largest(t, 2);
    CHECK(two.index(1) == ShearletIndex{Cone::H, 2, 1, 0, 0});
  }

  TEST_CASE("tail energy") {
    CoefficientTable t = table({3, -5, 2});
    CHECK(tail_energy(t, 1) == 13.0);
    CHECK(tail_energy(t, 3) == 0.0);
    CHECK(tail_energy(t, 0) == 38.0);
    CHECK(code_of([&] { tail_energy(t, 4); }) == ErrorCode::NOutOfRange);
  }

  TEST_CASE("tail and head partition the energy") {
    std::vector<double> v = testing::random_vector(5000, 3);
    double total = testing::dot(v, v);
    CoefficientTable t = table(v);
    std::vector<double> curve = tail_curve(t);
    REQUIRE(curve.size() == v.size() + 1);
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
    std::sort(sq.rbegin(), sq.rend());
    double head = 0.0;
    for (std::size_t N : {std::size_t{0}, std::size_t{1}, std::size_t{17}, std::size_t{999}, std::size_t{5000}}) {
      head = std::accumulate(sq.begin(), sq.begin() + static_cast<long>(N), 0.0);
      double tail = tail_energy(t, N);
      CHECK(std::abs(tail + head - total) <= 1e-12 * total);
      CHECK(std::abs(curve[N] - tail) <= 1e-12 * total);
    }
    for (std::size_t N = 1; N < curve.size(); ++N) CHECK(curve[N] <= curve[N - 1]);
  }

  TEST_CASE("fits on synthetic tails") {
    std::vector<double> N, pure, logged;
    for (std::size_t n : dyadic_n_list(6, 12, true)) {
      double x = static_cast<double>(n);
      N.push_back(x);
      pure.push_back(std::pow(x, -2.0));
      logged.push_back(std::pow(x, -2.0) * std::pow(std::log(x), 3.0));
    }
    RateFit a = fit_rate(N, pure, 64, 4096);
    CHECK(std::abs(a.beta - 2.0) <= 1e-6);
    CHECK(a.C == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(a.points == N.size());
    RateFit b = fit_rate(N, logged, 64, 4096);
    CHECK(std::abs(b.beta_log - 2.0) <= 1e-6);
    CHECK(b.beta < 2.0);
    CHECK(code_of([&] { fit_rate(N, pure, 64, 200); }) == ErrorCode::InsufficientPoints);
  }

  TEST_CASE("dyadic N lists") {
    CHECK(dyadic_n_list(2, 4) == std::vector<std::size_t>{4, 8, 16});
    CHECK(dyadic_n_list(2, 4, true) == std::vector<std::size_t>{4, 6, 8, 11, 16});
  }

  TEST_CASE("reconstruction from one coefficient of an atom") {
    // The canonical dual of a redundant frame does not return the atom from
    // its own coefficient alone; this pins the measured value.
    ShearletSystem sys(default_generators(), small_frame());
    const ShearletIndex idx{Cone::H, 1, 0, 4, 2};
    REQUIRE(sys.locate(idx));
    ImageGrid f = sys.sample_atom(idx);
    DecayReport r = decay_curve(f, sys, {1, 4, 16}, 0.5, {1e-10, 2000, true});
    REQUIRE(r.rows.size() == 3);
    double rel = r.rows[0].recon_error / r.energy;
    MESSAGE("relative error with one coefficient: " << rel);
    CHECK(rel == doctest::Approx(kOneTermGolden).epsilon(1e-3));
    CHECK(r.rows[2].recon_error <= r.rows[0].recon_error);
  }

  TEST_CASE("reconstruction error respects the frame bound") {
    ShearletSystem sys(default_generators(), small_frame());
    BoundsOptions o;
    o.tol = 1e-6;
    o.max_power_iterations = 2000;
    o.max_inverse_iterations = 60;
    o.max_cg_iterations = 2000;
    FrameBounds b = estimate_bounds(view_of(sys), o);
    ImageGrid f = testing::random_grid(32, 17);
    DecayReport r = decay_curve(f, sys, dyadic_n_list(4, 13, true), b.A, {1e-10, 2000, true});
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const DecayRow& row = r.rows[i];
      CAPTURE(row.N);
      CHECK(row.cg_converged);
      CHECK(row.bound == doctest::Approx(row.tail_energy / b.A));
      // The additive term covers the CG tolerance once the tail is exhausted.
      CHECK(row.recon_error <= 1.05 * row.bound + 1e-16 * r.energy);
      if (i > 0) {
        CHECK(row.tail_energy <= r.rows[i - 1].tail_energy);
        CHECK(row.recon_error <= 1.01 * r.rows[i - 1].recon_error);
      }
    }
  }

  TEST_CASE("decay curve ignores the order of the table") {
    ShearletSystem sys(default_generators(), small_frame());
    FrameView v = view_of(sys);
    std::vector<std::size_t> perm(sys.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(21));
    std::vector<ShearletIndex> idx(sys.size());
    for (std::size_t i = 0; i < perm.size(); ++i) idx[i] = sys.indices()[perm[i]];
    FrameView shuffled;
    shuffled.n = v.n;
    shuffled.size = v.size;
    shuffled.analyze = [v, perm](const ImageGrid& f) {
      std::vector<double> a = v.analyze(f), out(a.size());
      for (std::size_t i = 0; i < perm.size(); ++i) out[i] = a[perm[i]];
      return out;
    };
    shuffled.synthesize = [v, perm](const std::vector<double>& t) {
      std::vector<double> back(t.size());
      for (std::size_t i = 0; i < perm.size(); ++i) back[perm[i]] = t[i];
      return v.synthesize(back);
    };
    ImageGrid f = testing::random_grid(32, 22);
    std::vector<std::size_t> Ns = {8, 64, 512};
    DecayReport a = decay_curve(f, v, sys.indices(), Ns, 0.5, {1e-10, 2000, true});
    DecayReport b = decay_curve(f, shuffled, idx, Ns, 0.5, {1e-10, 2000, true});
    for (std::size_t i = 0; i < Ns.size(); ++i) {
      CHECK(testing::rel_diff(a.rows[i].tail_energy, b.rows[i].tail_energy) <= 1e-12);
      CHECK(testing::rel_diff(a.rows[i].recon_error, b.rows[i].recon_error) <= 1e-6);
    }
  }

  TEST_CASE("CG failures are annotated, not thrown") {
    ShearletSystem sys(default_generators(), small_frame());
    ImageGrid f = testing::random_grid(32, 23);
    DecayReport r = decay_curve(f, sys, {16, 64}, 0.5, {1e-14, 2, true});
    for (const DecayRow& row : r.rows) {
      CHECK_FALSE(row.cg_converged);
      CHECK_FALSE(row.note.empty());
    }
    CHECK(code_of([&] { fit_rate(r, 1, 100, FitColumn::Recon); }) == ErrorCode::InsufficientPoints);
  }
}
