#pragma once

#include <complex>
#include <string>
#include <vector>

#include "koch/cantor.hpp"

namespace koch {

// The coefficient series for b_n and tau_n exist in two published-equivalent
// forms; both are implemented independently and must agree.
enum class SeriesForm { compact, expanded };

// Fourier-side coefficients (all conjugate-symmetric in n, inp = i n p):
//   b_n   = sum_m beta_m (3^{2m+1}-4) / (4 (D-2m-1+inp))
//   tau_n = sum_m 4 beta_m (3^{2m+1}-1) / (-(2m+1)+inp)
//   a_n   = -3^{5/2}/(2^5(D-2+inp)) + 3^{3/2}/(2^3(D-1+inp))
//           + (pi-3^{3/2})/(2^3(D+inp)) + b_n/2
//   sigma_n = -log3 (pi/3 + 2 sqrt3) [n==0] - tau_n
std::complex<double> coeff_b(int n, int M, SeriesForm form = SeriesForm::compact);
std::complex<double> coeff_tau(int n, int M, SeriesForm form = SeriesForm::compact);
std::complex<double> coeff_a(int n, int M);
std::complex<double> coeff_sigma(int n, int M);

struct CoefficientTable {
  int N_max;
  int M;
  double D;
  double p;
  std::vector<std::complex<double>> a, b, sigma, tau;  // index n + N_max
  std::vector<double> beta;                            // beta_m, m = 1..M

  std::complex<double> an(int n) const { return a[n + N_max]; }
  std::complex<double> bn(int n) const { return b[n + N_max]; }
  std::complex<double> sigman(int n) const { return sigma[n + N_max]; }
  std::complex<double> taun(int n) const { return tau[n + N_max]; }
};

CoefficientTable build_coefficients(int N_max, int M);

// Windowed convolution (b*g)_n = sum_{|alpha|<=A, |n-alpha|<=A} b_alpha g_{n-alpha};
// requires profile.A_max >= 2 * table.N_max (ConfigError otherwise).
std::complex<double> convolve_bg(const CoefficientTable& ct, const CantorProfile& gp, int n);
std::complex<double> convolve_taug(const CoefficientTable& ct, const CantorProfile& gp, int n);

// Truncated tube formula V(eps) = eps^{2-D} G1 + eps^2 G2 with
//   G1 = (1/log3) Re sum_{|n|<=N} (a_n + (b*g)_n)   e^{2 pi i n x}
//   G2 = (1/log3) Re sum_{|n|<=N} (sigma_n + (tau*g)_n) e^{2 pi i n x}.
// Rejects frac == 0 (jump point).
struct TubeEvaluation {
  double epsilon;
  double V;
  double term_G1;
  double term_G2;
  double imag_residue;  // largest |Im| of the two sums, pre-projection
  int N;
  int M;
  int A_max;

  std::string truncation_note() const;
};

TubeEvaluation v_tube(double epsilon, const CoefficientTable& ct, const CantorProfile& gp);

// Reference path: V = 3 (V~(eps) - E(eps)) with an explicit occupancy value.
double v_direct(double epsilon, double h_value, int M = 30);

struct DirectEvaluation {
  double epsilon;
  double V;
  double term_G1;  // eps^{2-D} * periodic scaling factor
  double term_G2;  // eps^2 * periodic residual factor
  double h;
};

DirectEvaluation v_direct_full(double epsilon, double h_value, int M = 30);

// Flattened expansion coefficients in the eps^{-inp} basis:
//   phi_n = (-1)^n (a_n + (b*g)_n) / log3,  psi_n = (-1)^n (sigma_n + (tau*g)_n) / log3,
// so that V = eps^{2-D} sum phi_n eps^{-inp} + eps^2 sum psi_n eps^{-inp}.
std::pair<std::vector<std::complex<double>>, std::vector<std::complex<double>>>
flatten_phi_psi(const CoefficientTable& ct, const CantorProfile& gp);

// The two pole lines omega = D + inp (weight |phi_n|) and omega = inp
// (weight |psi_n|), n in [-N, N]: 2(2N+1) entries.
struct ComplexDimension {
  std::complex<double> omega;
  double magnitude;
  char family;  // 'D' for Re = D, '0' for Re = 0
};

std::vector<ComplexDimension> complex_dimensions(int N, const CoefficientTable& ct,
                                                 const CantorProfile& gp);

// Independently published approximate tube profile for comparison:
//   eps^{2-D} (sqrt3/4) 4^{-frac} ((3/5) 9^{frac} + 6*3^{frac} - 1).
double lapidus_vf_approx(double epsilon);

}  // namespace koch
