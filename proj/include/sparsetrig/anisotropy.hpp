#ifndef SPARSETRIG_ANISOTROPY_HPP
#define SPARSETRIG_ANISOTROPY_HPP

#include <cstddef>
#include <vector>

#include "sparsetrig/sparse_grid.hpp"

namespace sparsetrig {

enum class FitMode { hyperbolic, total_degree };

FitMode fit_mode_from_string(const std::string& s);
std::string to_string(FitMode mode);

// Over-determined log-linear system for the coefficient decay fit. Row j is
// (1, r(j_1), ..., r(j_d)) -> -log|w_j| with r = log(|sigma|+1) in hyperbolic
// mode and r = |sigma| in total-degree mode.
struct FitSystem {
  int dim = 0;
  std::size_t rows = 0;
  std::vector<double> matrix;  // row-major, rows x (dim+1)
  std::vector<double> rhs;
  std::size_t excluded_count = 0;  // weights under the floor, left out of the fit
};

// Builds the fit from the sparse weights. Weights with |w| below
// sqrt(eps) * max|w| (and exact zeroes) are excluded and counted. Throws
// UnderdeterminedFitError when fewer than dim+1 rows survive.
FitSystem build_fit(const WeightMap& weights, FitMode mode);

// Least-squares minimizer via Householder QR (never normal equations).
// Returns alpha and cbar un-normalized; components may be negative. Throws
// RankDeficientFitError naming the dimension without frequency variation.
AnisotropyVector solve_fit(const FitSystem& system);

// Remark-4 repair: non-positive rates are replaced by the smallest positive
// one (all ones when nothing is positive), then the vector is normalized so
// its minimum is exactly 1.
AnisotropyVector stabilize(const AnisotropyVector& estimate);

}  // namespace sparsetrig

#endif
