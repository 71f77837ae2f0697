#pragma once

#include <vector>

namespace koch {

// Gauss-Legendre rule on [-1, 1], computed by Newton iteration on the
// Legendre polynomial (machine precision); cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

// Integrate fn over [a, b] with one application of the given rule.
template <typename F>
double gauss_apply(const GaussRule& r, F&& fn, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    acc += r.weights[i] * fn(mid + half * r.nodes[i]);
  }
  return acc * half;
}

}  // namespace koch
