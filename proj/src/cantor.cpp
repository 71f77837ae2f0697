#include "koch/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "koch/constants.hpp"
#include "koch/errorblock.hpp"
#include "koch/errors.hpp"
#include "koch/quadrature.hpp"
#include "koch/scaling.hpp"

namespace koch {

namespace cantor_detail {

namespace {

constexpr int kMaxLevel = 40;

const double* pow3_table() {
  static double t[kMaxLevel + 1];
  static std::once_flag flag;
  std::call_once(flag, [] {
    t[0] = 1.0;
    for (int j = 1; j <= kMaxLevel; ++j) t[j] = t[j - 1] / 3.0;
  });
  return t;
}

}  // namespace

std::int64_t count_prefixes_leq(int L, double bound) {
  if (L < 0 || L > kMaxLevel) throw BoundsError("count_prefixes_leq: level out of [0,40]");
  if (bound < 0.0) return 0;
  if (L == 0) return 1;
  const double* p3 = pow3_table();
  const double maxv = 1.0 - p3[L];
  if (bound >= maxv) return std::int64_t{1} << L;
  std::int64_t cnt = 0;
  double val = 0.0;
  for (int j = 1; j <= L; ++j) {
    const double tail = p3[j] - p3[L];  // max reachable above val with digit j = 0
    if (val + tail <= bound) {
      cnt += std::int64_t{1} << (L - j);
      val += 2.0 * p3[j];
      if (val > bound) return cnt;
    }
  }
  return cnt + 1;
}

namespace {

void collect_prefixes(int j, int L, double val, double lo, double hi, const double* p3,
                      std::vector<double>& out) {
  if (val > hi) return;
  const double maxtail = (j <= L) ? p3[j - 1] - p3[L] : 0.0;
  if (val + maxtail < lo) return;
  if (j > L) {
    if (val > lo && val < hi) out.push_back(val);
    return;
  }
  collect_prefixes(j + 1, L, val, lo, hi, p3, out);
  collect_prefixes(j + 1, L, val + 2.0 * p3[j], lo, hi, p3, out);
}

}  // namespace

std::vector<double> prefixes_in(int L, double lo, double hi) {
  if (L < 0 || L > kMaxLevel) throw BoundsError("prefixes_in: level out of [0,40]");
  std::vector<double> out;
  if (!(lo < hi)) return out;
  collect_prefixes(1, L, 0.0, lo, hi, pow3_table(), out);
  std::sort(out.begin(), out.end());
  if (out.size() > 64) throw AccuracyError("prefixes_in: window unexpectedly wide");
  return out;
}

double straddle_integral(double cL, double cR, double epsh, double tol) {
  // Substitution y = -epsh cos(phi) removes the sqrt singularity at y = -epsh:
  //   s(y) = epsh sin(phi),  dy = epsh sin(phi) dphi,  phi in [0, asin(wk/(2 epsh))].
  // Integrand kinks are exact in phi:
  //   right-clip switch   cos(phi + pi/6) = (1 - cR)/(2 epsh)
  //   zero-clamp boundary cos(phi - pi/6) = (1 - cL)/(2 epsh).
  const double wk = cR - cL;
  if (!(wk > 0.0) || !(epsh > 0.0)) throw DomainError("straddle_integral: degenerate trianglet");
  const double half_ratio = wk / (2.0 * epsh);
  if (half_ratio >= 1.0) throw DomainError("straddle_integral: trianglet wider than the disc");
  const double phi_top = std::asin(half_ratio);
  const double pi6 = kPi / 6.0;

  auto integrand = [&](double phi) {
    const double s = epsh * std::sin(phi);
    const double y = -epsh * std::cos(phi);
    const double right = std::min(cR - s, 1.0 + kSqrt3 * y);
    return std::max(0.0, right - (cL + s)) * epsh * std::sin(phi);
  };

  std::vector<double> cuts{0.0, phi_top};
  const double c1 = (1.0 - cR) / (2.0 * epsh);
  if (std::abs(c1) < 1.0) {
    const double r = std::acos(c1) - pi6;
    if (r > 0.0 && r < phi_top) cuts.push_back(r);
  }
  const double c2 = (1.0 - cL) / (2.0 * epsh);
  if (std::abs(c2) < 1.0) {
    const double base = std::acos(c2);
    for (double r : {pi6 - base, pi6 + base}) {
      if (r > 0.0 && r < phi_top) cuts.push_back(r);
    }
  }
  std::sort(cuts.begin(), cuts.end());

  const GaussRule& g32 = gauss_legendre(32);
  const GaussRule& g64 = gauss_legendre(64);
  double total = 0.0;
  double err_est = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    const double i32 = gauss_apply(g32, integrand, a, b);
    const double i64 = gauss_apply(g64, integrand, a, b);
    double piece = i64;
    double piece_err = std::abs(i64 - i32);
    if (piece_err > tol) {
      // One refinement pass: bisect the piece.
      const double m = 0.5 * (a + b);
      const double l32 = gauss_apply(g32, integrand, a, m);
      const double l64 = gauss_apply(g64, integrand, a, m);
      const double r32 = gauss_apply(g32, integrand, m, b);
      const double r64 = gauss_apply(g64, integrand, m, b);
      piece = l64 + r64;
      piece_err = std::abs(l64 - l32) + std::abs(r64 - r32);
    }
    total += piece;
    err_est += piece_err;
  }
  if (err_est > tol * std::max(1.0, static_cast<double>(cuts.size()))) {
    throw AccuracyError("straddle_integral: quadrature tolerance not met");
  }
  return total;
}

}  // namespace cantor_detail

static double bhat_zero() {
  static double value = [] {
    double s = 0.0;
    for (double b : beta_coefficients(60)) s += b;
    return s;
  }();
  return value;
}

double mu() {
  static double value = 0.5 + f_crest(1.0 / kSqrt3) / (2.0 * bhat_zero());
  return value;
}

double mu_at(int k) {
  if (k < 1 || k > 12) throw BoundsError("mu_at: k out of [1,12]");
  const double eps_k = std::pow(3.0, -k) / kSqrt3;
  const double a1 = trianglet_area(1, eps_k);
  const double B = b_direct(eps_k, 60).value;
  return 0.5 + a1 / (2.0 * B);
}

double h_sup() {
  static double value = [] {
    const double f3 = f_crest(kSqrt3);
    return 0.5 + f3 / (2.0 * (f3 + 2.0 * bhat_zero()));
  }();
  return value;
}

double h_tilde(double epsilon) {
  const EpsilonIndex idx = index_of(epsilon);
  if (idx.frac == 0.0) return 0.0;
  return mu() * (1.0 - idx.frac);
}

double h_geometric_frac(double frac) {
  if (!(frac >= 0.0 && frac < 1.0)) {
    throw DomainError("h_geometric_frac: frac must lie in [0,1)");
  }
  if (frac == 0.0) return 0.0;

  const double epsh = std::pow(3.0, -frac) / kSqrt3;  // representative radius, block width 1
  const double cutoff0 = 1.0 - std::pow(3.0, -frac);  // formed-region cutoff on the floor
  const double B = b_series(epsh, 200);
  const double tol_each = 1e-10 * B / 8.0;

  double formed = 0.0;
  double two = 1.0;  // 2^{k-1}
  for (int k = 1; k <= 36; ++k) {
    const double wk = std::pow(3.0, -k);
    const double Xk = std::pow(3.0, frac + 0.5 - k);
    const double Ak = epsh * epsh * f_crest(Xk);
    if (two * Ak < 1e-16 * B && k > 1) break;
    const int L = k - 1;
    formed += static_cast<double>(cantor_detail::count_prefixes_leq(L, cutoff0 - 2.0 * wk)) * Ak;
    const double ytop = -epsh * std::sqrt(std::max(0.0, 1.0 - 0.25 * Xk * Xk));
    const double cutoff_top = 1.0 + kSqrt3 * ytop;
    for (double a : cantor_detail::prefixes_in(L, cutoff0 - 2.0 * wk, cutoff_top - wk)) {
      formed += cantor_detail::straddle_integral(a + wk, a + 2.0 * wk, epsh, tol_each);
    }
    two *= 2.0;
  }
  return std::clamp(formed / B, 0.0, mu());
}

double h_geometric(double epsilon) { return h_geometric_frac(index_of(epsilon).frac); }

std::complex<double> CantorProfile::at(int alpha) const {
  if (alpha < -A_max || alpha > A_max) throw BoundsError("CantorProfile::at: index out of range");
  return g[static_cast<std::size_t>(alpha + A_max)];
}

namespace {

struct ProfileGrid {
  std::vector<double> nodes;    // panels*8 abscissae in (0,1)
  std::vector<double> weights;  // matching weights
  std::vector<double> values;   // h at the abscissae
};

const ProfileGrid& profile_grid(HMode mode, int panels) {
  static std::map<std::pair<int, int>, ProfileGrid> cache;
  static std::mutex mu_cache;
  std::lock_guard<std::mutex> lock(mu_cache);
  auto key = std::make_pair(static_cast<int>(mode), panels);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const GaussRule& g8 = gauss_legendre(8);
  ProfileGrid grid;
  grid.nodes.reserve(static_cast<std::size_t>(panels) * 8);
  grid.weights.reserve(static_cast<std::size_t>(panels) * 8);
  const double width = 1.0 / panels;
  for (int j = 0; j < panels; ++j) {
    const double mid = (j + 0.5) * width;
    for (int i = 0; i < 8; ++i) {
      grid.nodes.push_back(mid + 0.5 * width * g8.nodes[i]);
      grid.weights.push_back(0.5 * width * g8.weights[i]);
    }
  }
  grid.values.resize(grid.nodes.size());
  const double mu_value = mu();
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    grid.values[i] = (mode == HMode::geometric) ? h_geometric_frac(grid.nodes[i])
                                                : mu_value * (1.0 - grid.nodes[i]);
  }
  return cache.emplace(key, std::move(grid)).first->second;
}

}  // namespace

CantorProfile fourier_g(int A_max, HMode mode) {
  if (A_max < 0 || A_max > 5000) throw BoundsError("fourier_g: A_max out of [0,5000]");
  const int panels = std::max(4096, 8 * A_max);
  const ProfileGrid& grid = profile_grid(mode, panels);
  const std::size_t n = grid.nodes.size();

  CantorProfile prof;
  prof.mode = mode;
  prof.A_max = A_max;
  prof.panels = panels;
  prof.mu = mu();
  prof.g.assign(2 * static_cast<std::size_t>(A_max) + 1, {0.0, 0.0});

  std::vector<std::complex<double>> rot(n), cur(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = std::polar(1.0, -2.0 * kPi * grid.nodes[i]);
    cur[i] = {1.0, 0.0};
  }
  for (int alpha = 0; alpha <= A_max; ++alpha) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      acc += grid.weights[i] * grid.values[i] * cur[i];
      cur[i] *= rot[i];
    }
    prof.g[static_cast<std::size_t>(A_max + alpha)] = acc;
    prof.g[static_cast<std::size_t>(A_max - alpha)] = std::conj(acc);
  }
  return prof;
}

}  // namespace koch
