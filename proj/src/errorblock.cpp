#include "koch/errorblock.hpp"

#include <cmath>
#include <mutex>

#include "koch/constants.hpp"
#include "koch/errors.hpp"
#include "koch/scaling.hpp"

namespace koch {

static double clamp_unit(double v) {
  if (v > 1.0) {
    if (v > 1.0 + 1e-15) throw DomainError("f_crest: argument past domain edge");
    return 1.0;
  }
  if (v < -1.0) {
    if (v < -1.0 - 1e-15) throw DomainError("f_crest: argument past domain edge");
    return -1.0;
  }
  return v;
}

double f_crest(double X) {
  if (X < 0.0) {
    if (X < -1e-15) throw DomainError("f_crest: negative width");
    return 0.0;
  }
  if (X > kSqrt3 * (1.0 + 1e-12)) throw DomainError("f_crest: width above sqrt(3)");
  if (X < 0.1) {
    // f(X) = sum_{k>=1} c_k (X/2)^{2k+1}, c_1 = 1/3,
    // c_{k+1}/c_k = (2k+1)(2k-1) / (2(k+1)(2k+3)); all terms positive, and the
    // tail after any term is below term * q/(1-q) with q = (X/2)^2 < 1.
    const double u = 0.5 * X;
    const double u2 = u * u;
    double c = 1.0 / 3.0;
    double pw = u2 * u;  // u^{2k+1}
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
      const double term = c * pw;
      sum += term;
      if (term < 1e-18 * sum) break;
      c *= static_cast<double>((2 * k + 1) * (2 * k - 1)) /
           static_cast<double>(2 * (k + 1) * (2 * k + 3));
      pw *= u2;
    }
    return sum;
  }
  const double half = clamp_unit(0.5 * X);
  return X - std::asin(half) - half * std::sqrt(std::max(0.0, 1.0 - half * half));
}

double BlockGeometry::X(int k) const {
  if (k < 1) throw BoundsError("BlockGeometry::X: order must be >= 1");
  return std::pow(3.0, frac + 0.5 - k);
}

BlockGeometry block_geometry(double epsilon) {
  const EpsilonIndex idx = index_of(epsilon);
  return BlockGeometry{epsilon, std::pow(3.0, -idx.n), idx.frac};
}

double trianglet_area(int k, double epsilon) {
  const BlockGeometry bg = block_geometry(epsilon);
  return epsilon * epsilon * f_crest(bg.X(k));
}

BSum b_direct(double epsilon, int K) {
  if (K < 1 || K > 400) throw BoundsError("b_direct: K out of [1,400]");
  const BlockGeometry bg = block_geometry(epsilon);
  const double e2 = epsilon * epsilon;
  double sum = 0.0;
  double two = 1.0;  // 2^{k-1}
  for (int k = 1; k <= K; ++k) {
    sum += two * e2 * f_crest(bg.X(k));
    two *= 2.0;
  }
  // Term ratio t_{k+1}/t_k = 2 f(X/3)/f(X) <= 2/27 (f is a positive series in
  // odd powers), so the omitted tail is below t_{K+1}/(1 - 2/27).
  const double t_next = two * e2 * f_crest(bg.X(K + 1));
  return BSum{sum, t_next / (1.0 - 2.0 / 27.0)};
}

std::vector<double> beta_coefficients(int M) {
  if (M < 1 || M > 300) throw BoundsError("beta_coefficients: M out of [1,300]");
  std::vector<double> beta(M);
  double b = std::pow(3.0, 1.5) / 600.0;
  double p3 = 27.0;  // 3^{2m+1}
  for (int m = 1; m <= M; ++m) {
    beta[m - 1] = b;
    const double p3n = p3 * 9.0;
    b *= 3.0 * (2.0 * m) * (2.0 * m - 1.0) * (2.0 * m + 1.0) * (p3 - 2.0) /
         (16.0 * m * (m + 1.0) * (2.0 * m + 3.0) * (p3n - 2.0));
    p3 = p3n;
  }
  return beta;
}

double b_series(double epsilon, int M) {
  const EpsilonIndex idx = index_of(epsilon);
  const std::vector<double> beta = beta_coefficients(M);
  const double g = std::pow(9.0, idx.frac);  // 3^{(2m+1)frac} = 3^frac * 9^{m frac}
  double pw = std::pow(3.0, idx.frac) * g;
  double hat = 0.0;
  for (int m = 1; m <= M; ++m) {
    hat += beta[m - 1] * pw;
    pw *= g;
  }
  return epsilon * epsilon * hat;
}

BlockCounts block_counts(double epsilon) {
  const EpsilonIndex idx = index_of(epsilon);
  if (idx.frac == 0.0) {
    const double p4 = std::ldexp(1.0, 2 * idx.n);
    return BlockCounts{(p4 - 4.0) / 3.0, (2.0 / 3.0) * (p4 + 2.0)};
  }
  const double y = std::pow(epsilon, -kD) * std::pow(4.0, -idx.frac) / 2.0;
  return BlockCounts{(y - 4.0) / 3.0, (2.0 / 3.0) * (y + 2.0)};
}

ErrorTotal total_error(double epsilon, double h_value, int M) {
  if (!(h_value >= 0.0 && h_value <= 1.0)) {
    throw DomainError("total_error: occupancy value must lie in [0,1]");
  }
  const EpsilonIndex idx = index_of(epsilon);
  const BlockCounts bc = block_counts(epsilon);
  const double B = b_series(epsilon, M);
  const double E = B * (bc.c + bc.p * h_value);
  const double hat = B / (epsilon * epsilon);
  const double part1 = std::pow(epsilon, 2.0 - kD) * hat * std::pow(4.0, -idx.frac) *
                       (1.0 + 2.0 * h_value) / 6.0;
  const double part2 = B * (4.0 / 3.0) * (h_value - 1.0);
  if (std::abs(part1 + part2 - E) > 1e-10 * std::max(1.0, std::abs(E))) {
    throw AccuracyError("total_error: split parts do not re-sum");
  }
  return ErrorTotal{epsilon, B, bc.c, bc.p, E, part1, part2};
}

static void self_check_defaults() {
  // Direct sum vs series at a generic radius; both paths must agree.
  const double eps = std::pow(3.0, -1.35) / kSqrt3;
  const double bd = b_direct(eps, 60).value;
  const double bs = b_series(eps, 150);
  if (std::abs(bd - bs) > 1e-11 * std::abs(bs)) {
    throw AccuracyError("default truncation self-check failed");
  }
}

int default_K() {
  static std::once_flag flag;
  std::call_once(flag, self_check_defaults);
  return 60;
}

int default_M() {
  static std::once_flag flag;
  std::call_once(flag, self_check_defaults);
  return 30;
}

}  // namespace koch
