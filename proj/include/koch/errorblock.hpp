#pragma once

#include <vector>

namespace koch {

// Crest-area profile f(X) = X - asin(X/2) - (X/2)sqrt(1 - X^2/4), X in [0, sqrt3].
// eps^2 f(X) is the area of one circular-segment pair cut off by a trianglet of
// width X*eps.  Below X = 0.1 the closed form cancels badly and an all-positive
// power series with a rigorous remainder is used instead.
double f_crest(double X);

// Geometry of the block containing eps: block width w = 3^{-n} and the scaled
// trianglet widths X_k = w/(3^k eps) = 3^{frac + 1/2 - k}, k >= 1.
struct BlockGeometry {
  double epsilon;
  double w;
  double frac;
  double X(int k) const;  // k >= 1
};

BlockGeometry block_geometry(double epsilon);

// Area eps^2 f(X_k) of one order-k trianglet overlap pair; k >= 1.
double trianglet_area(int k, double epsilon);

// Direct block sum B(eps) = sum_{k=1..K} 2^{k-1} eps^2 f(X_k) with a rigorous
// bound on the omitted tail (term ratio is at most 2/27).
struct BSum {
  double value;
  double tail_bound;
};

BSum b_direct(double epsilon, int K);

// Same block sum through the series B(eps) = eps^2 sum_{m=1..M} beta_m 3^{(2m+1)frac}.
double b_series(double epsilon, int M);

// Series coefficients beta_m, m = 1..M; beta_1 = 3^{3/2}/600,
// beta_{m+1}/beta_m = 3(2m)(2m-1)(2m+1)(3^{2m+1}-2) / (16 m (m+1) (2m+3) (3^{2m+3}-2)).
std::vector<double> beta_coefficients(int M);

// Continuous-variable piece counts entering the error term:
//   c = (eps^{-D} 4^{-frac}/2 - 4)/3,  p = (2/3)(eps^{-D} 4^{-frac}/2 + 2).
// When frac == 0 these are the exact integers (4^n - 4)/3 and (2/3)(4^n + 2).
struct BlockCounts {
  double c;
  double p;
};

BlockCounts block_counts(double epsilon);

// Total error term E = B(eps) (c + p h) for an occupancy value h in [0, 1],
// together with its split into a scaling part eps^{2-D} Bhat 4^{-frac}(1+2h)/6
// and a residual part eps^2 Bhat (4/3)(h-1); the split re-sums to E to 1e-10.
struct ErrorTotal {
  double epsilon;
  double B;
  double c;
  double p;
  double E;
  double part_scaling;
  double part_residual;
};

ErrorTotal total_error(double epsilon, double h_value, int M);

// Default truncations, self-checked at first use (direct sum vs series).
int default_K();  // 60
int default_M();  // 30

}  // namespace koch
