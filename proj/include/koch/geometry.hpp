#pragma once

#include <cstdint>
#include <vector>

namespace koch {

struct Point {
  double x;
  double y;
};

// Level-n refinement of the unit segment with bumps pointing up:
// 4^n + 1 vertices from (0,0) to (1,0), every edge of length 3^{-n}.
struct PrefractalCurve {
  int level;
  std::vector<Point> vertices;
};

PrefractalCurve build_prefractal(int n);  // n in [0, 12]

// Level-m outward refinement of the counterclockwise unit triangle
// (0,0), (1,0), (1/2, sqrt3/2): a simple closed polygon with 3*4^m vertices
// (last vertex not repeated), area sqrt3/4 + 3(sqrt3/20)(1 - (4/9)^m).
struct SnowflakePolygon {
  int level;
  std::vector<Point> vertices;
};

SnowflakePolygon build_snowflake(int m);  // m in [0, 10]

// Distance from p to the limit curve over [0,1] (bumps up), within tol:
// best-first branch-and-bound over the curve's similarity cells, hull-triangle
// lower bounds, on-curve anchor upper bounds; cells are pruned when their
// lower bound exceeds the current upper bound plus tol.
double distance_to_curve(Point p, double tol);

// Exact minimum distance from p to the level-n polyline (same cell tree,
// segment distance at the leaves).  Test oracle for distance_to_curve.
double polyline_min_distance(Point p, int level);

// Side of a threshold: is distance(q, boundary curve) below eps?
// BORDER when the two cannot be separated at width `margin`.
enum class DistSide { less, greater, border };

// Threshold classification against the full boundary (all three sides jointly).
DistSide classify_boundary_distance(Point q, double threshold, double margin);

// Membership in the level-m refinement polygon (exact descent, no polygon
// materialized; m may exceed the build_snowflake cap).
bool inside_polygon_level(Point q, int m);

// Monte Carlo estimate of the inner eps-neighborhood area.  Deterministic for
// fixed (samples, seed) regardless of worker count (KOCHTUBE_WORKERS).
// bias_bound = 3(sqrt3/20)(4/9)^m + box_area * indeterminate/samples, with
// membership level m = n(eps) + 6.
struct OracleEstimate {
  double epsilon;
  double area_mean;
  double std_error;
  std::int64_t samples;
  std::uint64_t seed;
  double bias_bound;
  std::int64_t indeterminate;
};

OracleEstimate oracle_inner_area(double epsilon, std::int64_t samples, std::uint64_t seed);

}  // namespace koch
