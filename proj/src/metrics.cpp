#include "sparsetrig/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sparsetrig/errors.hpp"
#include "sparsetrig/rng.hpp"
#include "sparsetrig/trig_basis.hpp"

namespace sparsetrig {

ValidationSet make_validation(int dim, std::uint64_t seed, std::size_t count) {
  if (dim < 1) throw ConfigError("validation set needs a positive dimension");
  ValidationSet v;
  v.seed = seed;
  Pcg64 rng(seed);
  v.unit_points.resize(count);
  for (auto& p : v.unit_points) {
    p.resize(static_cast<std::size_t>(dim));
    for (auto& c : p) c = rng.uniform01();
  }
  return v;
}

namespace {

// true when every coordinate sits within tol of a grid node of the finest
// rule present in that dimension
bool collides_with_node(const SparseGrid& grid, const std::vector<double>& p,
                        const std::vector<int>& max_level, double tol) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    double m = static_cast<double>(points_on_level(max_level[k]));
    double nearest = std::round(p[k] * m) / m;
    if (std::abs(p[k] - nearest) > tol) return false;
  }
  return true;
}

}  // namespace

ErrorStats error_stats(const SparseGrid& grid, ModelOracle& oracle, const ValidationSet& validation) {
  std::vector<int> max_level(static_cast<std::size_t>(grid.dim()), 0);
  for (const auto& level : grid.tensors().indices())
    for (std::size_t k = 0; k < max_level.size(); ++k)
      max_level[k] = std::max(max_level[k], static_cast<int>(level[k]));

  std::vector<std::vector<double>> points = validation.unit_points;
  Pcg64 reserve(validation.seed ^ 0xd1342543de82ef95ULL);
  for (auto& p : points) {
    while (collides_with_node(grid, p, max_level, 1e-12)) {
      for (auto& c : p) c = reserve.uniform01();
    }
  }

  std::vector<double> truth = oracle.evaluate_unit(points);
  std::vector<double> approx(points.size());
  grid.eval_batch(points, approx);

  ErrorStats stats;
  double sq = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double e = std::abs(truth[i] - approx[i]);
    stats.max_error = std::max(stats.max_error, e);
    sq += e * e;
  }
  stats.rmse = std::sqrt(sq / static_cast<double>(points.size()));
  return stats;
}

double max_error(const SparseGrid& grid, ModelOracle& oracle, const ValidationSet& validation) {
  return error_stats(grid, oracle, validation).max_error;
}

double rmse(const SparseGrid& grid, ModelOracle& oracle, const ValidationSet& validation) {
  return error_stats(grid, oracle, validation).rmse;
}

double convergence_slope(const std::vector<std::pair<std::size_t, double>>& history,
                         bool remove_log2_factor) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, err] : history) {
    if (!(err > 0.0) || n < 2) continue;
    double logn = std::log(static_cast<double>(n));
    double e = remove_log2_factor ? err / (logn * logn) : err;
    if (!(e > 0.0)) continue;
    pts.emplace_back(logn, std::log(e));
  }
  if (pts.size() < 3)
    throw ConfigError("convergence slope needs at least 3 history points with positive error");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sparsetrig
