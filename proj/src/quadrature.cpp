#include "koch/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "koch/errors.hpp"

namespace koch {

static GaussRule make_rule(int order) {
  GaussRule r;
  r.nodes.resize(order);
  r.weights.resize(order);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    // Chebyshev-style initial guess, then Newton on P_order.
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = -x;
    r.nodes[order - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weights[i] = w;
    r.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) r.nodes[order / 2] = 0.0;
  return r;
}

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 256) throw BoundsError("gauss_legendre: order out of [1,256]");
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

}  // namespace koch
