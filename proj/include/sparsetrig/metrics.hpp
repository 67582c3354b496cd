#ifndef SPARSETRIG_METRICS_HPP
#define SPARSETRIG_METRICS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sparsetrig/oracle.hpp"
#include "sparsetrig/sparse_grid.hpp"

namespace sparsetrig {

// Fixed uniform validation sample over the model domain (stored in unit
// coordinates). Reproducible from the seed: the points come from a pcg64
// stream, so the same seed gives bit-identical points on one platform.
struct ValidationSet {
  std::vector<std::vector<double>> unit_points;
  std::uint64_t seed = 0;
};

ValidationSet make_validation(int dim, std::uint64_t seed, std::size_t count = 2000);

struct ErrorStats {
  double max_error = 0.0;
  double rmse = 0.0;
};

// Both metrics in one sweep. Validation points that collide with a grid node
// (all coordinates within 1e-12 of one) are replaced from a reserve stream
// before evaluating.
ErrorStats error_stats(const SparseGrid& grid, ModelOracle& oracle, const ValidationSet& validation);

double max_error(const SparseGrid& grid, ModelOracle& oracle, const ValidationSet& validation);
double rmse(const SparseGrid& grid, ModelOracle& oracle, const ValidationSet& validation);

// least-squares slope of log(error) against log(nodes); with
// remove_log2_factor the error is divided by log^2(N) first. Entries with
// non-positive error are dropped; fewer than 3 survivors is an error.
double convergence_slope(const std::vector<std::pair<std::size_t, double>>& history,
                         bool remove_log2_factor = false);

}  // namespace sparsetrig

#endif
