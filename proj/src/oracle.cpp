#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "koch/constants.hpp"
#include "koch/errors.hpp"
#include "koch/geometry.hpp"
#include "koch/rng.hpp"
#include "koch/scaling.hpp"

namespace koch {

namespace {

int worker_count() {
  if (const char* env = std::getenv("KOCHTUBE_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Tally {
  std::int64_t hits = 0;
  std::int64_t indeterminate = 0;
};

}  // namespace

OracleEstimate oracle_inner_area(double epsilon, std::int64_t samples, std::uint64_t seed) {
  const EpsilonIndex idx = index_of(epsilon);  // validates the admissible range
  if (samples < 10000) throw DomainError("oracle_inner_area: need at least 10000 samples");

  const int m = idx.n + 6;
  // Any point farther than 3^{-m} from the level-m polygon boundary cannot be
  // separated from it by deeper refinements; band_radius adds the worst-case
  // offset between the polygon boundary and the limit curve.
  const double band_radius = (2.0 + kSqrt3 / 6.0) * std::pow(3.0, -m);
  const double indet_radius = std::pow(3.0, -(m + 1));

  // Sampling box: covers the snowflake and its admissible inner neighborhoods.
  const double y_lo = -kSqrt3 / 6.0;
  const double y_hi = kSqrt3 / 2.0;
  const double box_area = (y_hi - y_lo);  // width is exactly 1

  auto classify_sample = [&](double x, double y) -> int {
    // returns 0 = miss, 1 = hit, 2 = indeterminate
    const Point q{x, y};
    if (inside_polygon_level(q, m)) {
      switch (classify_boundary_distance(q, epsilon, 1e-12)) {
        case DistSide::less:
          return 1;
        case DistSide::greater:
          return 0;
        case DistSide::border:
          return 2;
      }
    }
    // Outside the level-m polygon: if well clear of the boundary band, the
    // point is outside the region entirely.
    if (classify_boundary_distance(q, band_radius, 0.0) == DistSide::greater) return 0;
    // Within the band the next refinement level settles most cases; a point of
    // the level-(m+1) polygon is inside the region and closer than epsilon.
    if (inside_polygon_level(q, m + 1)) return 1;
    if (classify_boundary_distance(q, indet_radius, 0.0) == DistSide::greater) return 0;
    return 2;
  };

  constexpr std::int64_t kPartitions = 65536;
  const std::int64_t chunk = (samples + kPartitions - 1) / kPartitions;
  std::vector<Tally> tallies(kPartitions);
  std::atomic<std::int64_t> next_partition{0};

  auto run_worker = [&]() {
    for (;;) {
      const std::int64_t part = next_partition.fetch_add(1, std::memory_order_relaxed);
      if (part >= kPartitions) return;
      const std::int64_t lo = part * chunk;
      const std::int64_t hi = std::min(samples, lo + chunk);
      Tally local;
      for (std::int64_t j = lo; j < hi; ++j) {
        const double u = rng_unit(seed, static_cast<std::uint64_t>(2 * j));
        const double v = rng_unit(seed, static_cast<std::uint64_t>(2 * j + 1));
        const int r = classify_sample(u, y_lo + (y_hi - y_lo) * v);
        if (r == 1) ++local.hits;
        else if (r == 2) ++local.indeterminate;
      }
      tallies[static_cast<std::size_t>(part)] = local;
    }
  };

  const int workers = worker_count();
  if (workers <= 1) {
    run_worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_worker);
    for (auto& th : pool) th.join();
  }

  std::int64_t hits = 0;
  std::int64_t indet = 0;
  for (const Tally& t : tallies) {
    hits += t.hits;
    indet += t.indeterminate;
  }

  const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  OracleEstimate out;
  out.epsilon = epsilon;
  out.area_mean = box_area * p_hat;
  out.std_error =
      box_area * std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) / static_cast<double>(samples));
  out.samples = samples;
  out.seed = seed;
  out.bias_bound = 3.0 * (kSqrt3 / 20.0) * std::pow(4.0 / 9.0, m) +
                   box_area * static_cast<double>(indet) / static_cast<double>(samples);
  out.indeterminate = indet;
  return out;
}

}  // namespace koch
