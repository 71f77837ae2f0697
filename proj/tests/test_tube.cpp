#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "doctest.h"
#include "koch/cantor.hpp"
#include "koch/constants.hpp"
#include "koch/errorblock.hpp"
#include "koch/errors.hpp"
#include "koch/scaling.hpp"
#include "koch/tube.hpp"

using namespace koch;

namespace {

// Off-jump log grid: 40 points per block interval, blocks n0..n1.
std::vector<double> off_jump_grid(int n0, int n1) {
  std::vector<double> out;
  for (int n = n0; n <= n1; ++n) {
    for (int j = 0; j < 40; ++j) {
      const double frac = 0.02 + 0.96 * j / 39.0;
      out.push_back(std::pow(3.0, -(n + frac)) / kSqrt3);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("mean coefficients: frozen values and exact relations") {
  const int M = 150;
  const std::complex<double> a0 = coeff_a(0, M);
  const std::complex<double> b0 = coeff_b(0, M);
  const std::complex<double> t0 = coeff_tau(0, M);
  const std::complex<double> s0 = coeff_sigma(0, M);
  CHECK(a0.imag() == 0.0);
  CHECK(b0.imag() == 0.0);
  CHECK(a0.real() == doctest::Approx(2.921504604159185).epsilon(1e-13));
  // The mean block-sum coefficient is negative: every term has a pole factor
  // D - 2m - 1 < 0, so the sum cannot be positive.
  CHECK(b0.real() == doctest::Approx(-0.030671034664360337).epsilon(1e-13));
  CHECK(b0.real() < 0.0);
  CHECK(t0.real() == doctest::Approx(-0.3252286725856273).epsilon(1e-13));
  CHECK(s0.real() == doctest::Approx(-4.6309400294074905).epsilon(1e-13));
  // sigma_0 + tau_0 = -log3 (pi/3 + 2 sqrt3), and sigma_n = -tau_n otherwise.
  CHECK(s0.real() + t0.real() ==
        doctest::Approx(-kLog3 * (kPi / 3.0 + 2.0 * kSqrt3)).epsilon(1e-14));
  for (int n : {1, -1, 4, -9}) {
    REQUIRE(coeff_sigma(n, M) == -coeff_tau(n, M));
  }

  // a_0 - b_0/2 equals the explicit three-pole sum ...
  const double three_pole = -std::pow(3.0, 2.5) / (32.0 * (kD - 2.0)) +
                            std::pow(3.0, 1.5) / (8.0 * (kD - 1.0)) +
                            (kPi - std::pow(3.0, 1.5)) / (8.0 * kD);
  CHECK(a0.real() - b0.real() / 2.0 ==
        doctest::Approx(three_pole).epsilon(1e-13));
  CHECK(three_pole == doctest::Approx(2.936840121491365).epsilon(1e-13));
  // ... which must match 3 log3 times the period average of the
  // scaling-power factor of the preliminary area (cross-module identity).
  const double avg = kC9 * (9.0 / 4.0 - 1.0) / std::log(9.0 / 4.0) +
                     kC3 * (3.0 / 4.0 - 1.0) / std::log(3.0 / 4.0) +
                     kC1 * (1.0 / 4.0 - 1.0) / std::log(1.0 / 4.0);
  CHECK(a0.real() - b0.real() / 2.0 ==
        doctest::Approx(3.0 * kLog3 * avg).epsilon(1e-12));
}

TEST_CASE("coefficient series: both published forms agree") {
  for (int n : {0, 1, -1, 3, -3, 7, -7}) {
    const std::complex<double> bc = coeff_b(n, 40, SeriesForm::compact);
    const std::complex<double> be = coeff_b(n, 40, SeriesForm::expanded);
    REQUIRE(std::abs(bc - be) <= 1e-12 * std::abs(bc));
    const std::complex<double> tc = coeff_tau(n, 40, SeriesForm::compact);
    const std::complex<double> te = coeff_tau(n, 40, SeriesForm::expanded);
    REQUIRE(std::abs(tc - te) <= 1e-12 * std::abs(tc));
  }
}

TEST_CASE("coefficient table: conjugate symmetry and decay") {
  const CoefficientTable ct = build_coefficients(200, 30);
  CHECK(ct.N_max == 200);
  CHECK(ct.D == kD);
  CHECK(ct.p == kP);
  for (int n = 1; n <= 200; ++n) {
    REQUIRE(ct.an(-n) == std::conj(ct.an(n)));
    REQUIRE(ct.bn(-n) == std::conj(ct.bn(n)));
    REQUIRE(ct.sigman(-n) == std::conj(ct.sigman(n)));
    REQUIRE(ct.taun(-n) == std::conj(ct.taun(n)));
  }
  double max_nb = 0.0, max_nt = 0.0;
  for (int n = 1; n <= 200; ++n) {
    max_nb = std::max(max_nb, n * std::abs(ct.bn(n)));
    max_nt = std::max(max_nt, n * std::abs(ct.taun(n)));
  }
  MESSAGE("max |n b_n| = " << max_nb << ", max |n tau_n| = " << max_nt);
  CHECK(max_nb < 0.02);
  CHECK(max_nt < 0.3);
}

TEST_CASE("windowed convolution: window guard and quadrature cross-check") {
  const CoefficientTable ct = build_coefficients(24, 30);
  const CantorProfile narrow = fourier_g(40, HMode::approximate);
  CHECK_THROWS_AS(convolve_bg(ct, narrow, 0), ConfigError);

  const CantorProfile gp = fourier_g(48, HMode::approximate);
  // The convolution equals the uniform-grid Fourier coefficient of the
  // product of the two truncated syntheses; the grid rule is exact for
  // trigonometric polynomials of this bandwidth.
  const int P = 512;
  std::vector<std::complex<double>> prod(P);
  for (int j = 0; j < P; ++j) {
    const double x = static_cast<double>(j) / P;
    std::complex<double> bs = 0.0, hs = 0.0;
    for (int al = -24; al <= 24; ++al) {
      bs += ct.bn(al) * std::polar(1.0, 2.0 * kPi * al * x);
    }
    for (int al = -48; al <= 48; ++al) {
      hs += gp.at(al) * std::polar(1.0, 2.0 * kPi * al * x);
    }
    prod[j] = bs * hs;
  }
  auto grid_coeff = [&](int n) {
    std::complex<double> s = 0.0;
    for (int j = 0; j < P; ++j) {
      s += prod[j] * std::polar(1.0, -2.0 * kPi * n * static_cast<double>(j) / P);
    }
    return s / static_cast<double>(P);
  };
  for (int n : {0, 1, 2, 5, 24, -3}) {
    const std::complex<double> conv = convolve_bg(ct, gp, n);
    REQUIRE(std::abs(conv - grid_coeff(n)) <= 1e-12);
  }
}

TEST_CASE("tube evaluation: jump guard, positivity, small imaginary residue") {
  const CoefficientTable ct = build_coefficients(50, 30);
  const CantorProfile gp = fourier_g(100, HMode::approximate);
  CHECK_THROWS_AS(v_tube(kEpsMax, ct, gp), DomainError);
  CHECK_THROWS_AS(v_tube(std::pow(3.0, -2.0) / kSqrt3, ct, gp), DomainError);

  for (double eps : off_jump_grid(0, 4)) {
    const TubeEvaluation te = v_tube(eps, ct, gp);
    REQUIRE(te.V > 0.0);
    REQUIRE(te.imag_residue <= 1e-9);
    // The two reported terms are the additive pieces of V (power factors
    // already applied).
    REQUIRE(te.V == doctest::Approx(te.term_G1 + te.term_G2).epsilon(1e-12));
  }
  const TubeEvaluation te = v_tube(std::pow(3.0, -1.4), ct, gp);
  CHECK(te.truncation_note() == "N=50 M=30 A_max=100");
}

TEST_CASE("tube evaluation agrees with the direct path (matched linear model)") {
  const CoefficientTable ct = build_coefficients(50, 30);
  const CantorProfile gp = fourier_g(100, HMode::approximate);
  // The linear occupancy model jumps by mu at every block boundary, so the
  // truncated synthesis rings near the boundaries; compare away from them.
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n) {
    for (int j = 0; j < 40; ++j) {
      const double frac = 0.10 + 0.80 * j / 39.0;
      const double eps = std::pow(3.0, -(n + frac)) / kSqrt3;
      const double vt = v_tube(eps, ct, gp).V;
      const double vd = v_direct(eps, h_tilde(eps));
      worst = std::max(worst, std::abs(vt - vd) / vd);
    }
  }
  MESSAGE("worst relative gap tube-vs-direct (N=50, frac in [0.1,0.9]): " << worst);
  CHECK(worst < 0.01);
}

TEST_CASE("direct path: linear response to the occupancy value") {
  const double eps = std::pow(3.0, -2.6);
  const ErrorTotal et = total_error(eps, 0.0, 30);
  const double v_lo = v_direct(eps, 0.3);
  const double v_hi = v_direct(eps, 0.8);
  CHECK(v_hi - v_lo == doctest::Approx(-3.0 * et.B * et.p * 0.5).epsilon(1e-10));
}

TEST_CASE("direct path: continuity across a block boundary") {
  // Approaching the right endpoint of a block interval from the interval
  // above (frac -> 1) with the exact-continuity occupancy limit must meet
  // the endpoint value (frac == 0, occupancy 0).
  const double eb = std::pow(3.0, -2.0) / kSqrt3;
  const double at_end = v_direct(eb, 0.0);
  const double above = v_direct(eb * (1.0 + 1e-9), h_sup());
  CHECK(std::abs(above - at_end) <= 1e-6 * at_end);

  // With the clamped geometric occupancy the same approach leaves a small
  // jump, because the exact-continuity limit exceeds the ceiling mu.
  const double eps_hi = eb * (1.0 + 1e-9);
  const double clamped = v_direct(eps_hi, h_geometric(eps_hi));
  const double jump = std::abs(clamped - at_end);
  MESSAGE("clamped boundary jump at eps=3^{-2}/sqrt3: " << jump
          << " (relative " << jump / at_end << ")");
  CHECK(jump <= 1e-3 * at_end);
  // The jump is bounded by the occupancy sensitivity 3 B p |h_sup - h|
  // (plus the tiny drift from the 1e-9 radius offset).
  const ErrorTotal et = total_error(eps_hi, 0.0, 30);
  CHECK(jump <=
        3.0 * et.B * et.p * (h_sup() - h_geometric(eps_hi)) * (1.0 + 1e-6) + 1e-8);
}

TEST_CASE("direct path: split terms reassemble and depend only on frac") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const double u = 0.03 + 0.94 * i / 49.0;
    const double eps = std::pow(3.0, -(1.0 + u)) / kSqrt3;
    const double h = h_tilde(eps);
    const DirectEvaluation d1 = v_direct_full(eps, h);
    const DirectEvaluation d3 = v_direct_full(eps / 3.0, h);
    REQUIRE(d1.V == doctest::Approx(d1.term_G1 + d1.term_G2).epsilon(1e-12));
    // Stripped of their power factors, both terms repeat from block to block.
    const double g1a = d1.term_G1 / std::pow(eps, 2.0 - kD);
    const double g1b = d3.term_G1 / std::pow(eps / 3.0, 2.0 - kD);
    REQUIRE(g1a == doctest::Approx(g1b).epsilon(1e-9));
    const double g2a = d1.term_G2 / (eps * eps);
    const double g2b = d3.term_G2 / (eps * eps / 9.0);
    REQUIRE(g2a == doctest::Approx(g2b).epsilon(1e-9));
    REQUIRE(d1.h == h);
  }
}

TEST_CASE("flattened expansion: symmetry and resynthesis") {
  const CoefficientTable ct = build_coefficients(40, 30);
  const CantorProfile gp = fourier_g(80, HMode::approximate);
  const auto [phi, psi] = flatten_phi_psi(ct, gp);
  REQUIRE(phi.size() == 81);
  REQUIRE(psi.size() == 81);
  CHECK(std::abs(phi[40].imag()) <= 1e-13);
  CHECK(std::abs(psi[40].imag()) <= 1e-13);
  for (int n = 1; n <= 40; ++n) {
    REQUIRE(std::abs(phi[40 - n] - std::conj(phi[40 + n])) <=
            1e-14 * (1.0 + std::abs(phi[40 + n])));
    REQUIRE(std::abs(psi[40 - n] - std::conj(psi[40 + n])) <=
            1e-14 * (1.0 + std::abs(psi[40 + n])));
  }
  for (double eps : {std::pow(3.0, -0.8), std::pow(3.0, -1.55), std::pow(3.0, -3.3)}) {
    std::complex<double> s1 = 0.0, s2 = 0.0;
    for (int n = -40; n <= 40; ++n) {
      const std::complex<double> pw =
          std::exp(std::complex<double>(0.0, -n * kP * std::log(eps)));
      s1 += phi[n + 40] * pw;
      s2 += psi[n + 40] * pw;
    }
    const double v_flat =
        std::pow(eps, 2.0 - kD) * s1.real() + eps * eps * s2.real();
    const double v_sum = v_tube(eps, ct, gp).V;
    REQUIRE(v_flat == doctest::Approx(v_sum).epsilon(1e-12));
  }
}

TEST_CASE("complex dimensions: two vertical lines with period-p spacing") {
  const CoefficientTable ct = build_coefficients(10, 30);
  const CantorProfile gp = fourier_g(20, HMode::approximate);
  const std::vector<ComplexDimension> dims = complex_dimensions(10, ct, gp);
  REQUIRE(dims.size() == 42);
  const auto [phi, psi] = flatten_phi_psi(ct, gp);
  for (int i = 0; i < 21; ++i) {
    REQUIRE(dims[i].family == 'D');
    REQUIRE(dims[i].omega.real() == kD);
    REQUIRE(dims[i].omega.imag() ==
            doctest::Approx((i - 10) * kP).epsilon(1e-13));
    REQUIRE(dims[i].magnitude == doctest::Approx(std::abs(phi[i])).epsilon(1e-14));
    if (i > 0) {
      REQUIRE(dims[i].omega.imag() - dims[i - 1].omega.imag() ==
              doctest::Approx(kP).epsilon(1e-12));
    }
  }
  for (int i = 21; i < 42; ++i) {
    REQUIRE(dims[i].family == '0');
    REQUIRE(dims[i].omega.real() == 0.0);
    REQUIRE(dims[i].magnitude ==
            doctest::Approx(std::abs(psi[i - 21])).epsilon(1e-14));
  }
  // Conjugate closure: magnitudes pair up across the real axis.
  for (int n = 1; n <= 10; ++n) {
    REQUIRE(dims[10 + n].magnitude ==
            doctest::Approx(dims[10 - n].magnitude).epsilon(1e-13));
    REQUIRE(dims[31 + n].magnitude ==
            doctest::Approx(dims[31 - n].magnitude).epsilon(1e-13));
  }
  CHECK_THROWS_AS(complex_dimensions(11, ct, gp), BoundsError);
}

TEST_CASE("published approximate profile stays within a factor-2 band") {
  for (int n = 1; n <= 4; ++n) {
    for (double frac : {0.2, 0.5, 0.8}) {
      const double eps = std::pow(3.0, -(n + frac)) / kSqrt3;
      const double ratio = lapidus_vf_approx(eps) / v_direct(eps, h_tilde(eps));
      REQUIRE(ratio > 0.5);
      REQUIRE(ratio < 2.0);
    }
  }
}

TEST_CASE("tube evaluation: truncation error shrinks as N grows") {
  const CantorProfile gp = fourier_g(800, HMode::approximate);
  const CoefficientTable c100 = build_coefficients(100, 30);
  const CoefficientTable c200 = build_coefficients(200, 30);
  const CoefficientTable c400 = build_coefficients(400, 30);
  for (double eps : {std::pow(3.0, -0.75), std::pow(3.0, -1.33),
                     std::pow(3.0, -2.12), std::pow(3.0, -2.93)}) {
    const double v100 = v_tube(eps, c100, gp).V;
    const double v200 = v_tube(eps, c200, gp).V;
    const double v400 = v_tube(eps, c400, gp).V;
    REQUIRE(std::abs(v400 - v200) <= std::abs(v200 - v100) + 1e-15);
  }
}

TEST_CASE("tube evaluation: scaling factors repeat from block to block") {
  const CoefficientTable ct = build_coefficients(50, 30);
  const CantorProfile gp = fourier_g(100, HMode::approximate);
  for (double frac : {0.15, 0.45, 0.85}) {
    const double eps = std::pow(3.0, -(1.0 + frac)) / kSqrt3;
    const TubeEvaluation t1 = v_tube(eps, ct, gp);
    const TubeEvaluation t3 = v_tube(eps / 3.0, ct, gp);
    REQUIRE(t1.term_G1 / std::pow(eps, 2.0 - kD) ==
            doctest::Approx(t3.term_G1 / std::pow(eps / 3.0, 2.0 - kD))
                .epsilon(1e-9));
    REQUIRE(t1.term_G2 / (eps * eps) ==
            doctest::Approx(t3.term_G2 / (eps * eps / 9.0)).epsilon(1e-9));
  }
}
