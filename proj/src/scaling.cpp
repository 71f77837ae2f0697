#include "koch/scaling.hpp"

#include <cmath>

#include "koch/constants.hpp"
#include "koch/errors.hpp"

namespace koch {

EpsilonIndex index_of(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("index_of: radius must be a finite positive number");
  }
  double x = -std::log(epsilon * kSqrt3) / kLog3;
  const double r = std::round(x);
  if (std::abs(x - r) <= 5e-13 * std::max(1.0, std::abs(x))) x = r;
  if (x < 0.0) throw DomainError("index_of: radius exceeds 3^{-1/2}");
  const int n = static_cast<int>(std::floor(x));
  double frac = x - n;
  if (frac >= 1.0) frac = std::nextafter(1.0, 0.0);  // floor guard at representation edge
  return EpsilonIndex{epsilon, x, n, frac};
}

PieceCounts piece_counts(int n) {
  if (n < 0 || n > 30) throw BoundsError("piece_counts: level out of [0,30]");
  const std::int64_t p4 = std::int64_t{1} << (2 * n);
  return PieceCounts{p4, 2 * ((p4 - 1) / 3), 2 * ((p4 + 2) / 3), p4};
}

PieceAreas piece_areas(const EpsilonIndex& idx) {
  const double e = idx.epsilon;
  return PieceAreas{
      e * std::pow(3.0, -idx.n),
      kPi * e * e / 6.0,
      e * e * kSqrt3 / 2.0,
      (kSqrt3 / 20.0) * std::pow(9.0, -idx.n),
  };
}

static void check_pair(double lhs, double rhs, const char* what) {
  if (std::abs(lhs - rhs) > 1e-12 * std::max(std::abs(lhs), std::abs(rhs))) {
    throw AccuracyError(std::string("power_identities: ") + what + " mismatch");
  }
}

PowerIdentities power_identities(const EpsilonIndex& idx) {
  const double e = idx.epsilon;
  const double x = idx.x;
  PowerIdentities out{
      std::pow(e, -kD) / 2.0,
      3.0 * e * e,
      (kSqrt3 / 2.0) * std::pow(e, 1.0 - kD),
      1.5 * std::pow(e, 2.0 - kD),
  };
  check_pair(std::pow(4.0, x), out.four_x, "4^x");
  check_pair(std::pow(9.0, -x), out.nine_neg_x, "9^{-x}");
  check_pair(std::pow(4.0 / 3.0, x), out.four_thirds_x, "(4/3)^x");
  check_pair(std::pow(4.0 / 9.0, x), out.four_ninths_x, "(4/9)^x");
  return out;
}

}  // namespace koch
