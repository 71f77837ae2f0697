#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace koch {

// Half-count correction mu = 1/2 + A_1(eps_k) / (2 B(eps_k)) at the block
// endpoints eps_k = 3^{-k}/sqrt3; the ratio is exactly k-invariant.
double mu();
double mu_at(int k);

// Supremum of the geometric occupancy profile as frac -> 1-.
double h_sup();

// Sawtooth approximation of the occupancy profile: mu * (1 - frac),
// and 0 at integer x (frac == 0).
double h_tilde(double epsilon);

// Occupancy profile measured from the geometry: the fraction (weighted by
// trianglet area) of each block's overlap regions that has fully formed at
// radius eps, counting straddling regions by their clipped partial area.
// Depends on eps only through frac; clamped into [0, mu].
double h_geometric(double epsilon);
double h_geometric_frac(double frac);

enum class HMode { geometric, approximate };

// Fourier coefficients g_alpha = int_0^1 h(t) e^{-2 pi i alpha t} dt of the
// selected profile, alpha in [-A_max, A_max], with g_{-alpha} = conj(g_alpha)
// by construction.  Composite Gauss-Legendre, 8 points per panel,
// panels = max(4096, 8 A_max).
struct CantorProfile {
  HMode mode;
  int A_max;
  int panels;
  double mu;                            // range bound of the profile
  std::vector<std::complex<double>> g;  // index alpha + A_max

  std::complex<double> at(int alpha) const;
};

CantorProfile fourier_g(int A_max, HMode mode);

namespace cantor_detail {

// Number of level-L gap positions a = sum_{j<=L} d_j 2*3^{-j} (d_j in {0,1})
// with a <= bound; L in [0, 40].
std::int64_t count_prefixes_leq(int L, double bound);

// All level-L gap positions in the open interval (lo, hi).
std::vector<double> prefixes_in(int L, double lo, double hi);

// Clipped partial area of one straddling trianglet in block coordinates:
// integral over y in [-epsh, ytop] of
//   max(0, min(cR - s(y), 1 + sqrt3*y) - (cL + s(y))),  s(y) = sqrt(epsh^2-y^2),
// split at the integrand's kinks, Gauss-Legendre on each smooth piece.
double straddle_integral(double cL, double cR, double epsh, double tol);

}  // namespace cantor_detail

}  // namespace koch
