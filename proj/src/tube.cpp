#include "koch/tube.hpp"

#include <cmath>

#include "koch/constants.hpp"
#include "koch/errorblock.hpp"
#include "koch/errors.hpp"
#include "koch/prelim.hpp"
#include "koch/scaling.hpp"

namespace koch {

static void check_nm(int n, int M) {
  if (std::abs(n) > 100000) throw BoundsError("coefficient index out of range");
  if (M < 1 || M > 300) throw BoundsError("coefficient series M out of [1,300]");
}

std::complex<double> coeff_b(int n, int M, SeriesForm form) {
  check_nm(n, M);
  const std::complex<double> inp(0.0, n * kP);
  std::complex<double> acc{0.0, 0.0};
  if (form == SeriesForm::compact) {
    const std::vector<double> beta = beta_coefficients(M);
    double p3 = 27.0;  // 3^{2m+1}
    for (int m = 1; m <= M; ++m) {
      acc += beta[m - 1] * (p3 - 4.0) / (4.0 * (kD - (2.0 * m + 1.0) + inp));
      p3 *= 9.0;
    }
  } else {
    // (2m)!-style summand: (2m)! 3^{(2m+1)/2} (3^{2m+1}-4)
    //   / (4^{2m+1} (m!)^2 (4m^2-1) (3^{2m+1}-2) (D-2m-1+inp)).
    double r = 2.0 / 64.0;  // (2m)!/(4^{2m+1} (m!)^2) at m = 1
    double s3 = std::pow(3.0, 1.5);  // 3^{(2m+1)/2}
    double p3 = 27.0;
    for (int m = 1; m <= M; ++m) {
      const double num = r * s3 * (p3 - 4.0);
      const double den = (4.0 * m * m - 1.0) * (p3 - 2.0);
      acc += num / (den * (kD - (2.0 * m + 1.0) + inp));
      r *= (2.0 * m + 1.0) / (8.0 * (m + 1.0));
      s3 *= 3.0;
      p3 *= 9.0;
    }
  }
  return acc;
}

std::complex<double> coeff_tau(int n, int M, SeriesForm form) {
  check_nm(n, M);
  const std::complex<double> inp(0.0, n * kP);
  std::complex<double> acc{0.0, 0.0};
  if (form == SeriesForm::compact) {
    const std::vector<double> beta = beta_coefficients(M);
    double p3 = 27.0;
    for (int m = 1; m <= M; ++m) {
      acc += 4.0 * beta[m - 1] * (p3 - 1.0) / (-(2.0 * m + 1.0) + inp);
      p3 *= 9.0;
    }
  } else {
    // (2m)!-style summand: (2m)! 3^{(2m+1)/2} (3^{2m+1}-1)
    //   / (4^{2m-1} (m!)^2 (4m^2-1) (3^{2m+1}-2) (-(2m+1)+inp)).
    double r = 2.0 / 4.0;  // (2m)!/(4^{2m-1} (m!)^2) at m = 1
    double s3 = std::pow(3.0, 1.5);
    double p3 = 27.0;
    for (int m = 1; m <= M; ++m) {
      const double num = r * s3 * (p3 - 1.0);
      const double den = (4.0 * m * m - 1.0) * (p3 - 2.0);
      acc += num / (den * (-(2.0 * m + 1.0) + inp));
      r *= (2.0 * m + 1.0) / (8.0 * (m + 1.0));
      s3 *= 3.0;
      p3 *= 9.0;
    }
  }
  return acc;
}

std::complex<double> coeff_a(int n, int M) {
  check_nm(n, M);
  const std::complex<double> inp(0.0, n * kP);
  const double c5 = std::pow(3.0, 2.5);
  const double c3 = std::pow(3.0, 1.5);
  return -c5 / (32.0 * (kD - 2.0 + inp)) + c3 / (8.0 * (kD - 1.0 + inp)) +
         (kPi - c3) / (8.0 * (kD + inp)) + coeff_b(n, M) / 2.0;
}

std::complex<double> coeff_sigma(int n, int M) {
  check_nm(n, M);
  std::complex<double> acc = -coeff_tau(n, M);
  if (n == 0) acc -= kLog3 * (kPi / 3.0 + 2.0 * kSqrt3);
  return acc;
}

CoefficientTable build_coefficients(int N_max, int M) {
  if (N_max < 0 || N_max > 5000) throw BoundsError("build_coefficients: N_max out of [0,5000]");
  check_nm(0, M);
  CoefficientTable ct;
  ct.N_max = N_max;
  ct.M = M;
  ct.D = kD;
  ct.p = kP;
  ct.beta = beta_coefficients(M);
  const std::size_t size = 2 * static_cast<std::size_t>(N_max) + 1;
  ct.a.resize(size);
  ct.b.resize(size);
  ct.sigma.resize(size);
  ct.tau.resize(size);
  for (int n = 0; n <= N_max; ++n) {
    const std::complex<double> bn = coeff_b(n, M);
    const std::complex<double> tn = coeff_tau(n, M);
    const std::complex<double> an = coeff_a(n, M);
    const std::complex<double> sn = coeff_sigma(n, M);
    ct.b[static_cast<std::size_t>(N_max + n)] = bn;
    ct.tau[static_cast<std::size_t>(N_max + n)] = tn;
    ct.a[static_cast<std::size_t>(N_max + n)] = an;
    ct.sigma[static_cast<std::size_t>(N_max + n)] = sn;
    ct.b[static_cast<std::size_t>(N_max - n)] = std::conj(bn);
    ct.tau[static_cast<std::size_t>(N_max - n)] = std::conj(tn);
    ct.a[static_cast<std::size_t>(N_max - n)] = std::conj(an);
    ct.sigma[static_cast<std::size_t>(N_max - n)] = std::conj(sn);
  }
  return ct;
}

static void check_window(const CoefficientTable& ct, const CantorProfile& gp) {
  if (gp.A_max < 2 * ct.N_max) {
    throw ConfigError("convolution window too small: need A_max >= 2*N_max");
  }
}

static std::complex<double> convolve(const std::vector<std::complex<double>>& coef, int N_max,
                                     const CantorProfile& gp, int n) {
  std::complex<double> acc{0.0, 0.0};
  for (int alpha = -N_max; alpha <= N_max; ++alpha) {
    const int beta_idx = n - alpha;
    if (beta_idx < -gp.A_max || beta_idx > gp.A_max) continue;
    acc += coef[static_cast<std::size_t>(alpha + N_max)] *
           gp.g[static_cast<std::size_t>(beta_idx + gp.A_max)];
  }
  return acc;
}

std::complex<double> convolve_bg(const CoefficientTable& ct, const CantorProfile& gp, int n) {
  check_window(ct, gp);
  return convolve(ct.b, ct.N_max, gp, n);
}

std::complex<double> convolve_taug(const CoefficientTable& ct, const CantorProfile& gp, int n) {
  check_window(ct, gp);
  return convolve(ct.tau, ct.N_max, gp, n);
}

std::string TubeEvaluation::truncation_note() const {
  return "N=" + std::to_string(N) + " M=" + std::to_string(M) +
         " A_max=" + std::to_string(A_max);
}

TubeEvaluation v_tube(double epsilon, const CoefficientTable& ct, const CantorProfile& gp) {
  check_window(ct, gp);
  const EpsilonIndex idx = index_of(epsilon);
  if (idx.frac == 0.0) {
    throw DomainError("v_tube: synthesis undefined at a scale-grid jump point");
  }
  const int N = ct.N_max;
  std::complex<double> s1{0.0, 0.0}, s2{0.0, 0.0};
  for (int n = -N; n <= N; ++n) {
    const std::complex<double> w = std::polar(1.0, 2.0 * kPi * n * idx.frac);
    s1 += (ct.an(n) + convolve(ct.b, N, gp, n)) * w;
    s2 += (ct.sigman(n) + convolve(ct.tau, N, gp, n)) * w;
  }
  s1 /= kLog3;
  s2 /= kLog3;
  const double g1 = s1.real();
  const double g2 = s2.real();
  const double term1 = std::pow(epsilon, 2.0 - kD) * g1;
  const double term2 = epsilon * epsilon * g2;
  TubeEvaluation ev;
  ev.epsilon = epsilon;
  ev.V = term1 + term2;
  ev.term_G1 = term1;
  ev.term_G2 = term2;
  ev.imag_residue = std::max(std::abs(s1.imag()), std::abs(s2.imag()));
  ev.N = N;
  ev.M = ct.M;
  ev.A_max = gp.A_max;
  return ev;
}

DirectEvaluation v_direct_full(double epsilon, double h_value, int M) {
  const EpsilonIndex idx = index_of(epsilon);
  const PrelimArea pre = pre_v(epsilon);
  const ErrorTotal err = total_error(epsilon, h_value, M);
  const double V = 3.0 * (pre.value - err.E);

  const double t = idx.frac;
  const double hat = err.B / (epsilon * epsilon);
  const double P = std::pow(4.0, -t) *
                   (kC9 * std::pow(9.0, t) + kC3 * std::pow(3.0, t) + kC1);
  const double F1 = 3.0 * P - std::pow(4.0, -t) * hat * (1.0 + 2.0 * h_value) / 2.0;
  const double F2 = -3.0 * kQ0 - 4.0 * hat * (h_value - 1.0);
  const double term1 = std::pow(epsilon, 2.0 - kD) * F1;
  const double term2 = epsilon * epsilon * F2;
  if (std::abs(term1 + term2 - V) > 1e-10 * std::max(1.0, std::abs(V))) {
    throw AccuracyError("v_direct_full: term split does not re-sum");
  }
  return DirectEvaluation{epsilon, V, term1, term2, h_value};
}

double v_direct(double epsilon, double h_value, int M) {
  return v_direct_full(epsilon, h_value, M).V;
}

std::pair<std::vector<std::complex<double>>, std::vector<std::complex<double>>>
flatten_phi_psi(const CoefficientTable& ct, const CantorProfile& gp) {
  check_window(ct, gp);
  const int N = ct.N_max;
  std::vector<std::complex<double>> phi(2 * static_cast<std::size_t>(N) + 1);
  std::vector<std::complex<double>> psi(2 * static_cast<std::size_t>(N) + 1);
  for (int n = -N; n <= N; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    phi[static_cast<std::size_t>(n + N)] =
        sign * (ct.an(n) + convolve(ct.b, N, gp, n)) / kLog3;
    psi[static_cast<std::size_t>(n + N)] =
        sign * (ct.sigman(n) + convolve(ct.tau, N, gp, n)) / kLog3;
  }
  return {std::move(phi), std::move(psi)};
}

std::vector<ComplexDimension> complex_dimensions(int N, const CoefficientTable& ct,
                                                 const CantorProfile& gp) {
  if (N < 0 || N > ct.N_max) throw BoundsError("complex_dimensions: N out of [0, table N_max]");
  auto [phi, psi] = flatten_phi_psi(ct, gp);
  std::vector<ComplexDimension> out;
  out.reserve(2 * (2 * static_cast<std::size_t>(N) + 1));
  for (int n = -N; n <= N; ++n) {
    out.push_back({{kD, n * kP}, std::abs(phi[static_cast<std::size_t>(n + ct.N_max)]), 'D'});
  }
  for (int n = -N; n <= N; ++n) {
    out.push_back({{0.0, n * kP}, std::abs(psi[static_cast<std::size_t>(n + ct.N_max)]), '0'});
  }
  return out;
}

double lapidus_vf_approx(double epsilon) {
  const EpsilonIndex idx = index_of(epsilon);
  const double t = idx.frac;
  return std::pow(epsilon, 2.0 - kD) * (kSqrt3 / 4.0) * std::pow(4.0, -t) *
         ((3.0 / 5.0) * std::pow(9.0, t) + 6.0 * std::pow(3.0, t) - 1.0);
}

}  // namespace koch
