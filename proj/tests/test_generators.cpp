#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "shearbd/error.hpp"
#include "shearbd/generators.hpp"
#include "support.hpp"

using namespace shearbd;

namespace {

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// h * sum t^p f(t) over the sample nodes.
double moment(const Sampled1D& f, int p) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double t = f.lo + static_cast<double>(i) * f.step();
    s += std::pow(t, p) * f.values[i];
  }
  return s * f.step();
}

}  // namespace

TEST_SUITE("generators") {
  TEST_CASE("Haar and four-tap lowpass filters") {
    Filter1D haar = maximally_flat_lowpass(1);
    REQUIRE(haar.taps.size() == 2);
    CHECK(haar.taps[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(haar.taps[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    Filter1D d4 = maximally_flat_lowpass(2);
    REQUIRE(d4.taps.size() == 4);
    const double s3 = std::sqrt(3.0), den = 4.0 * std::sqrt(2.0);
    const double expected[4] = {(1 + s3) / den, (3 + s3) / den, (3 - s3) / den, (1 - s3) / den};
    for (int i = 0; i < 4; ++i) CHECK(d4.taps[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }

  TEST_CASE("lowpass taps sum to sqrt 2 and satisfy orthogonality") {
    for (int m = 1; m <= 12; ++m) {
      CAPTURE(m);
      Filter1D h = maximally_flat_lowpass(m);
      CHECK(h.taps.size() == static_cast<std::size_t>(2 * m));
      CHECK(std::abs(sum(h.taps) - std::sqrt(2.0)) <= 1e-12);
      // sum_k h_k h_{k+2l} = delta_l
      for (int l = 0; 2 * l < static_cast<int>(h.taps.size()); ++l) {
        double c = 0.0;
        for (std::size_t k = 0; k + 2 * l < h.taps.size(); ++k) c += h.taps[k] * h.taps[k + 2 * l];
        CHECK(c == doctest::Approx(l == 0 ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
      }
    }
    CHECK_THROWS_AS(maximally_flat_lowpass(0), Error);
    CHECK_THROWS_AS(maximally_flat_lowpass(13), Error);
  }

  TEST_CASE("highpass complement has zeros at the origin") {
    for (int m : {2, 4, 6}) {
      Filter1D g = highpass_complement(maximally_flat_lowpass(m));
      CHECK(g.role == Filter1D::Role::Highpass);
      for (int p = 0; p < m; ++p) {
        double s = 0.0;
        for (std::size_t k = 0; k < g.taps.size(); ++k) s += std::pow(static_cast<double>(k), p) * g.taps[k];
        CHECK(std::abs(s) <= 1e-8 * std::pow(2.0 * m, p));
      }
    }
  }

  TEST_CASE("Haar cascade is the unit indicator") {
    for (int r : {8, 10}) {
      Sampled1D phi = cascade(maximally_flat_lowpass(1), r);
      CHECK(phi.lo == 0.0);
      CHECK(phi.hi == 1.0);
      for (std::size_t i = 0; i + 1 < phi.values.size(); ++i) CHECK(phi.values[i] == doctest::Approx(1.0));
      CHECK(phi(0.25) == doctest::Approx(1.0));
      CHECK(phi(1.5) == 0.0);
      CHECK(std::abs(phi.norm2_squared() - 1.0) <= 1e-2);
    }
  }

  TEST_CASE("cascade values agree across resolutions") {
    Filter1D h = maximally_flat_lowpass(4);
    Sampled1D a = cascade(h, 10), b = cascade(h, 12);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[4 * i]));
    CHECK(worst <= 1e-6);
    CHECK(std::abs(a.norm2_squared() - 1.0) <= 1e-4);
  }

  TEST_CASE("wavelet from m_flat 4 has four discrete vanishing moments") {
    Sampled1D psi = cascade(highpass_complement(maximally_flat_lowpass(4)), 10);
    for (int p = 0; p < 4; ++p) CHECK(std::abs(moment(psi, p)) <= 1e-8);
    CHECK(std::abs(moment(psi, 4)) > 1e-6);
  }

  TEST_CASE("refinement equation holds on the sample grid") {
    Filter1D h = maximally_flat_lowpass(5);
    Sampled1D phi = cascade(h, 10);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
      double t = phi.lo + static_cast<double>(i) * phi.step();
      double rhs = 0.0;
      for (std::size_t k = 0; k < h.taps.size(); ++k) rhs += std::sqrt(2.0) * h.taps[k] * phi(2.0 * t - static_cast<double>(k));
      worst = std::max(worst, std::abs(phi.values[i] - rhs));
    }
    CHECK(worst <= 1e-6);
  }

  TEST_CASE("default generator set") {
    auto gen = testing::default_generators();
    CHECK(gen->psi1.lo == 0.0);
    CHECK(gen->psi1.hi == 11.0);
    CHECK(gen->psi2.lo == 0.0);
    CHECK(gen->psi2.hi == 9.0);
    CHECK(gen->vanishing_moments == 6);
    for (int p = 0; p < gen->vanishing_moments; ++p) CHECK(std::abs(moment(gen->psi1, p)) <= 1e-8);

    // Outside the declared supports every factor vanishes.
    CHECK(gen->psi(-0.01, 3.0) == 0.0);
    CHECK(gen->psi(11.01, 3.0) == 0.0);
    CHECK(gen->psi(3.0, 9.01) == 0.0);

    for (double x1 : {0.3, 2.7, 5.5, 8.1})
      for (double x2 : {0.9, 3.3, 7.6}) {
        CHECK(gen->psi_tilde(x1, x2) == gen->psi(x2, x1));
        CHECK(gen->phi(x1, x2) == gen->psi2(x1) * gen->psi2(x2));
      }
    double n1 = std::sqrt(gen->psi1.norm2_squared()), n2 = std::sqrt(gen->psi2.norm2_squared());
    CHECK(std::abs(gen->psi_norm() - n1 * n2) <= 1e-6);
  }

  TEST_CASE("sample energy equals DFT energy") {
    auto gen = testing::default_generators();
    for (const Sampled1D* f : {&gen->psi1, &gen->psi2}) {
      const std::size_t N = f->values.size();
      double spatial = 0.0, spectral = 0.0;
      for (double v : f->values) spatial += v * v;
      // Direct O(N^2) transform with a recurrence for the twiddle factors.
      for (std::size_t k = 0; k < N; ++k) {
        std::complex<double> w = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N));
        std::complex<double> acc = 0.0, tw = 1.0;
        for (std::size_t i = 0; i < N; ++i) {
          acc += f->values[i] * tw;
          tw *= w;
          if ((i & 255) == 255) tw /= std::abs(tw);
        }
        spectral += std::norm(acc);
      }
      spectral /= static_cast<double>(N);
      CHECK(testing::rel_diff(spatial, spectral) <= 1e-8);
    }
  }

  TEST_CASE("Haar wavelet rises linearly at the origin") {
    GeneratorSet haar = build_generator_set(1, 5, 10);
    DecayValidationReport r = validate_decay(haar);
    CHECK(r.alpha == doctest::Approx(1.0).epsilon(0.1));
    CHECK_FALSE(r.alpha_ok);
  }

  TEST_CASE("default set: rise exponent and symmetry of the swapped generator") {
    auto gen = testing::default_generators();
    DecayValidationReport r = validate_decay(*gen);
    CHECK(r.alpha >= gen->vanishing_moments - 0.5);
    CHECK(r.alpha_ok);
    CHECK(r.envelope_mass > 0.0);
    CHECK(std::isfinite(r.envelope_mass));

    DecayValidationReport t = validate_decay(*gen, true);
    CHECK(t.wavelet_axis == 2);
    CHECK(t.alpha == doctest::Approx(r.alpha).epsilon(1e-12));
    CHECK(t.gamma1 == doctest::Approx(r.gamma1).epsilon(1e-12));
    CHECK(t.gamma2 == doctest::Approx(r.gamma2).epsilon(1e-12));
    CHECK(t.c1 == doctest::Approx(r.c1).epsilon(1e-12));
  }

  TEST_CASE("fourier derivative matches a difference quotient") {
    auto gen = testing::default_generators();
    for (double xi : {0.3, 2.0, 9.0}) {
      const double d = 1e-5;
      std::complex<double> fd = (gen->psi2.fourier(xi + d) - gen->psi2.fourier(xi - d)) / (2 * d);
      CHECK(std::abs(fd - gen->psi2.fourier_derivative(xi)) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }

  TEST_CASE("line fit") {
    std::vector<double> x = {0, 1, 2, 3}, y = {1, 3, 5, 7};
    LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.residual == doctest::Approx(0.0).scale(1.0));
  }
}
