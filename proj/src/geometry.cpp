#include "koch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>

#include "koch/constants.hpp"
#include "koch/errors.hpp"

namespace koch {

namespace {

using C = std::complex<double>;

// Child similarities of the canonical curve over [0,1], bumps up.
const C kChildC[4] = {{1.0 / 3.0, 0.0},
                      {1.0 / 6.0, std::sqrt(3.0) / 6.0},
                      {1.0 / 6.0, -std::sqrt(3.0) / 6.0},
                      {1.0 / 3.0, 0.0}};
const C kChildT[4] = {{0.0, 0.0},
                      {1.0 / 3.0, 0.0},
                      {0.5, std::sqrt(3.0) / 6.0},
                      {2.0 / 3.0, 0.0}};

// Hull-triangle apex of the canonical curve; the point itself lies on the curve.
const C kApex{0.5, std::sqrt(3.0) / 6.0};

inline double cross(C u, C v) { return u.real() * v.imag() - u.imag() * v.real(); }

double segment_distance(C p, C a, C b) {
  const C d = b - a;
  const double L2 = std::norm(d);
  double t = L2 > 0.0 ? (std::conj(d) * (p - a)).real() / L2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

// Distance to a (counterclockwise) triangle; 0 inside.
double triangle_distance(C p, C a, C b, C c) {
  const double s1 = cross(b - a, p - a);
  const double s2 = cross(c - b, p - b);
  const double s3 = cross(a - c, p - c);
  if (s1 >= 0.0 && s2 >= 0.0 && s3 >= 0.0) return 0.0;
  return std::min({segment_distance(p, a, b), segment_distance(p, b, c),
                   segment_distance(p, c, a)});
}

bool in_triangle(C p, C a, C b, C c, double tol) {
  return cross(b - a, p - a) >= -tol && cross(c - b, p - b) >= -tol &&
         cross(a - c, p - c) >= -tol;
}

struct Node {
  double lb;
  C c;
  C t;
  C q;  // query point in the node's root frame
  int depth;
  bool operator>(const Node& o) const { return lb > o.lb; }
};

using NodeHeap = std::priority_queue<Node, std::vector<Node>, std::greater<Node>>;

inline double node_lb(const Node& n) { return n.lb; }

// Push a node for transform (c, t) against query q; updates ub with the three
// on-curve anchors (both endpoints and the apex image).
void expand_into(NodeHeap& heap, C q, C c, C t, int depth, double& ub, double push_limit) {
  const C v0 = t;
  const C v1 = c + t;
  const C va = c * kApex + t;
  ub = std::min({ub, std::abs(q - v0), std::abs(q - v1), std::abs(q - va)});
  const double lb = triangle_distance(q, v0, v1, va);
  if (lb <= push_limit) heap.push(Node{lb, c, t, q, depth});
}

const C kSideA[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
const C kSideB[3] = {{1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}, {0.0, 0.0}};

// Map a plane point into the canonical frame of side i (unit side length;
// conjugation flips the outward bumps to the canonical up orientation).
C side_frame(C z, int i) { return std::conj((z - kSideA[i]) * std::conj(kSideB[i] - kSideA[i])); }

}  // namespace

PrefractalCurve build_prefractal(int n) {
  if (n < 0 || n > 12) throw BoundsError("build_prefractal: level out of [0,12]");
  std::vector<C> pts{{0.0, 0.0}, {1.0, 0.0}};
  for (int step = 0; step < n; ++step) {
    std::vector<C> next;
    next.reserve(4 * (pts.size() - 1) + 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const C a = pts[i];
      const C d = pts[i + 1] - a;
      next.push_back(a);
      next.push_back(a + d / 3.0);
      next.push_back(a + d * kApex);  // peak of the new bump
      next.push_back(a + d * (2.0 / 3.0));
    }
    next.push_back(pts.back());
    pts = std::move(next);
  }
  PrefractalCurve out;
  out.level = n;
  out.vertices.reserve(pts.size());
  for (const C& z : pts) out.vertices.push_back({z.real(), z.imag()});
  return out;
}

SnowflakePolygon build_snowflake(int m) {
  if (m < 0 || m > 10) throw BoundsError("build_snowflake: level out of [0,10]");
  const PrefractalCurve side = build_prefractal(m);
  SnowflakePolygon out;
  out.level = m;
  out.vertices.reserve(3 * (side.vertices.size() - 1));
  for (int i = 0; i < 3; ++i) {
    const C A = kSideA[i];
    const C dir = kSideB[i] - A;
    for (std::size_t j = 0; j + 1 < side.vertices.size(); ++j) {
      const C w{side.vertices[j].x, side.vertices[j].y};
      const C z = A + dir * std::conj(w);
      out.vertices.push_back({z.real(), z.imag()});
    }
  }
  return out;
}

double distance_to_curve(Point p, double tol) {
  if (!(tol >= 1e-14)) throw DomainError("distance_to_curve: tol must be >= 1e-14");
  const C q{p.x, p.y};
  NodeHeap heap;
  double ub = std::numeric_limits<double>::infinity();
  expand_into(heap, q, {1.0, 0.0}, {0.0, 0.0}, 0, ub, std::numeric_limits<double>::infinity());
  while (!heap.empty()) {
    const Node node = heap.top();
    if (ub - node.lb <= 2.0 * tol) return 0.5 * (ub + node.lb);
    heap.pop();
    if (node.lb > ub + tol) continue;
    for (int j = 0; j < 4; ++j) {
      expand_into(heap, node.q, node.c * kChildC[j], node.c * kChildT[j] + node.t,
                  node.depth + 1, ub, ub + tol);
    }
  }
  return ub;
}

double polyline_min_distance(Point p, int level) {
  if (level < 0 || level > 16) throw BoundsError("polyline_min_distance: level out of [0,16]");
  const C q{p.x, p.y};
  NodeHeap heap;
  double ub = std::numeric_limits<double>::infinity();
  heap.push(Node{triangle_distance(q, {0.0, 0.0}, {1.0, 0.0}, kApex), {1.0, 0.0}, {0.0, 0.0}, q, 0});
  while (!heap.empty()) {
    const Node node = heap.top();
    heap.pop();
    if (node.lb >= ub) break;  // best-first: nothing better remains
    if (node.depth == level) {
      ub = std::min(ub, segment_distance(q, node.t, node.c + node.t));
      continue;
    }
    for (int j = 0; j < 4; ++j) {
      const C c = node.c * kChildC[j];
      const C t = node.c * kChildT[j] + node.t;
      const double lb = triangle_distance(q, t, c + t, c * kApex + t);
      if (lb < ub) heap.push(Node{lb, c, t, q, node.depth + 1});
    }
  }
  return ub;
}

DistSide classify_boundary_distance(Point q, double threshold, double margin) {
  if (!(threshold > 0.0)) throw DomainError("classify_boundary_distance: threshold must be > 0");
  const C z{q.x, q.y};
  const double margin_eff = std::max(margin, 1e-13 * std::max(1.0, threshold));
  NodeHeap heap;
  double ub = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    expand_into(heap, side_frame(z, i), {1.0, 0.0}, {0.0, 0.0}, 0, ub,
                threshold + margin_eff);
  }
  while (true) {
    if (ub < threshold) return DistSide::less;
    const double minlb = heap.empty() ? std::numeric_limits<double>::infinity() : heap.top().lb;
    if (minlb > threshold) return DistSide::greater;
    if (ub - minlb <= margin_eff) return DistSide::border;
    const Node node = heap.top();
    heap.pop();
    for (int j = 0; j < 4; ++j) {
      expand_into(heap, node.q, node.c * kChildC[j], node.c * kChildT[j] + node.t,
                  node.depth + 1, ub, std::min(ub, threshold + margin_eff));
    }
  }
}

bool inside_polygon_level(Point q, int m) {
  if (m < 0 || m > 36) throw BoundsError("inside_polygon_level: level out of [0,36]");
  const C z{q.x, q.y};
  const double tol = 1e-14;
  if (in_triangle(z, kSideA[0], kSideA[1], kSideA[2], tol)) return true;
  // Level-1 bump triangle and hull in the canonical frame.
  const C tb0{1.0 / 3.0, 0.0}, tb1{2.0 / 3.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    C w = side_frame(z, i);
    if (!in_triangle(w, {0.0, 0.0}, {1.0, 0.0}, kApex, tol)) continue;
    bool alive = true;
    for (int depth = 1; depth <= m && alive; ++depth) {
      if (in_triangle(w, tb0, tb1, kApex, tol)) return true;
      alive = false;
      for (int j = 0; j < 4; ++j) {
        const C wj = (w - kChildT[j]) / kChildC[j];
        if (in_triangle(wj, {0.0, 0.0}, {1.0, 0.0}, kApex, tol)) {
          w = wj;
          alive = true;
          break;
        }
      }
    }
  }
  return false;
}

}  // namespace koch
