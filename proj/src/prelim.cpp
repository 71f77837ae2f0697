#include "koch/prelim.hpp"

#include <cmath>
#include <complex>

#include "koch/constants.hpp"
#include "koch/errors.hpp"
#include "koch/scaling.hpp"

namespace koch {

PrelimArea pre_v(double epsilon) {
  const EpsilonIndex idx = index_of(epsilon);
  const double e = epsilon;
  const double t = idx.frac;
  const double p4 = std::ldexp(1.0, 2 * idx.n);
  const double p3 = std::pow(3.0, idx.n);

  const double rect = e * p4 / p3;
  const double wedge = kPi * e * e * (p4 - 1.0) / 9.0;
  const double tri = e * e * kSqrt3 * (p4 + 2.0) / 3.0;
  const double fringe = (kSqrt3 / 20.0) * std::pow(4.0 / 9.0, idx.n);

  const double value =
      std::pow(e, 2.0 - kD) * std::pow(4.0, -t) *
          (kC9 * std::pow(9.0, t) + kC3 * std::pow(3.0, t) + kC1) -
      e * e * kQ0;
  return PrelimArea{e, value, rect, wedge, tri, fringe};
}

double fourier_pow(double a, double x, int N) {
  if (!(a > 0.0) || a == 1.0) throw DomainError("fourier_pow: base must be positive and != 1");
  if (N < 0) throw BoundsError("fourier_pow: N must be >= 0");
  const double la = std::log(a);
  double sum = 1.0 / la;
  for (int n = 1; n <= N; ++n) {
    const std::complex<double> den(la, 2.0 * kPi * n);
    const std::complex<double> term = std::polar(1.0, 2.0 * kPi * n * x) / den;
    sum += 2.0 * term.real();
  }
  return (a - 1.0) / a * sum;
}

double pre_v_fourier(double epsilon, int N) {
  if (N < 0) throw BoundsError("pre_v_fourier: N must be >= 0");
  const EpsilonIndex idx = index_of(epsilon);
  if (idx.frac == 0.0) {
    throw DomainError("pre_v_fourier: synthesis undefined at a scale-grid jump point");
  }
  const double c5 = std::pow(3.0, 2.5);  // 3^{5/2}
  const double c3 = std::pow(3.0, 1.5);  // 3^{3/2}
  const double le = std::log(epsilon);

  std::complex<double> acc{0.0, 0.0};
  for (int n = -N; n <= N; ++n) {
    const std::complex<double> inp(0.0, n * kP);
    const std::complex<double> cn = -c5 / (32.0 * (kD - 2.0 + inp)) +
                                    c3 / (8.0 * (kD - 1.0 + inp)) +
                                    (kPi - c3) / (8.0 * (kD + inp));
    // eps^{2-D-inp} = eps^{2-D} e^{-i n p log eps}
    const std::complex<double> pw = std::polar(std::pow(epsilon, 2.0 - kD), -n * kP * le);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    acc += sign * cn * pw;
  }
  acc /= 3.0 * kLog3;
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real()))) {
    throw AccuracyError("pre_v_fourier: imaginary residue above tolerance");
  }
  return acc.real() - epsilon * epsilon * kQ0;
}

}  // namespace koch
