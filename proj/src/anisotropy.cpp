#include "sparsetrig/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sparsetrig/errors.hpp"
#include "sparsetrig/trig_basis.hpp"

namespace sparsetrig {

FitMode fit_mode_from_string(const std::string& s) {
  if (s == "hyperbolic") return FitMode::hyperbolic;
  if (s == "total-degree" || s == "total_degree") return FitMode::total_degree;
  throw ConfigError("unknown fit mode: " + s);
}

std::string to_string(FitMode mode) {
  return mode == FitMode::hyperbolic ? "hyperbolic" : "total-degree";
}

FitSystem build_fit(const WeightMap& weights, FitMode mode) {
  if (weights.empty()) throw ConfigError("cannot fit anisotropy with no weights");
  const int d = static_cast<int>(weights.begin()->first.size());

  double wmax = 0.0;
  for (const auto& [j, w] : weights) wmax = std::max(wmax, std::abs(w));
  const double floor = std::sqrt(std::numeric_limits<double>::epsilon()) * wmax;

  FitSystem sys;
  sys.dim = d;
  for (const auto& [j, w] : weights) {
    double mag = std::abs(w);
    if (mag == 0.0 || mag < floor) {
      ++sys.excluded_count;
      continue;
    }
    sys.matrix.push_back(1.0);
    for (int k = 0; k < d; ++k) {
      double s = static_cast<double>(sigma_abs(j[static_cast<std::size_t>(k)]));
      sys.matrix.push_back(mode == FitMode::hyperbolic ? std::log(s + 1.0) : s);
    }
    sys.rhs.push_back(-std::log(mag));
    ++sys.rows;
  }
  if (sys.rows < static_cast<std::size_t>(d) + 1)
    throw UnderdeterminedFitError("anisotropy fit needs at least " + std::to_string(d + 1) +
                                  " usable weights, got " + std::to_string(sys.rows));
  return sys;
}

AnisotropyVector solve_fit(const FitSystem& system) {
  const std::size_t n = static_cast<std::size_t>(system.dim) + 1;
  const std::size_t m = system.rows;
  if (m < n) throw UnderdeterminedFitError("fit system is underdetermined");

  std::vector<double> a = system.matrix;  // row-major m x n, reduced in place
  std::vector<double> b = system.rhs;

  std::vector<double> colnorm(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) colnorm[c] += a[r * n + c] * a[r * n + c];
  for (auto& v : colnorm) v = std::sqrt(v);

  std::vector<double> house(m);
  for (std::size_t c = 0; c < n; ++c) {
    double norm = 0.0;
    for (std::size_t r = c; r < m; ++r) norm += a[r * n + c] * a[r * n + c];
    norm = std::sqrt(norm);
    if (norm <= 1e-12 * (colnorm[c] + 1.0)) {
      if (c == 0) throw RankDeficientFitError("fit matrix has a degenerate constant column", 0);
      throw RankDeficientFitError("no frequency variation in dimension " + std::to_string(c),
                                  static_cast<int>(c));
    }
    double alpha = a[c * n + c] > 0 ? -norm : norm;
    double vnorm2 = 0.0;
    for (std::size_t r = c; r < m; ++r) {
      house[r] = a[r * n + c] - (r == c ? alpha : 0.0);
      vnorm2 += house[r] * house[r];
    }
    if (vnorm2 == 0.0) continue;
    for (std::size_t cc = c; cc < n; ++cc) {
      double dot = 0.0;
      for (std::size_t r = c; r < m; ++r) dot += house[r] * a[r * n + cc];
      double f = 2.0 * dot / vnorm2;
      for (std::size_t r = c; r < m; ++r) a[r * n + cc] -= f * house[r];
    }
    double dot = 0.0;
    for (std::size_t r = c; r < m; ++r) dot += house[r] * b[r];
    double f = 2.0 * dot / vnorm2;
    for (std::size_t r = c; r < m; ++r) b[r] -= f * house[r];
  }

  std::vector<double> v(n, 0.0);
  for (std::size_t c = n; c-- > 0;) {
    double sum = b[c];
    for (std::size_t cc = c + 1; cc < n; ++cc) sum -= a[c * n + cc] * v[cc];
    v[c] = sum / a[c * n + c];
  }

  AnisotropyVector out;
  out.cbar = v[0];
  out.alpha.assign(v.begin() + 1, v.end());
  return out;
}

AnisotropyVector stabilize(const AnisotropyVector& estimate) {
  if (estimate.alpha.empty()) throw ConfigError("cannot stabilize an empty anisotropy vector");
  AnisotropyVector out = estimate;
  double min_positive = std::numeric_limits<double>::infinity();
  for (double a : out.alpha)
    if (a > 0.0) min_positive = std::min(min_positive, a);
  if (!std::isfinite(min_positive)) {
    std::fill(out.alpha.begin(), out.alpha.end(), 1.0);
    return out;
  }
  for (double& a : out.alpha)
    if (a <= 0.0) a = min_positive;
  double lo = *std::min_element(out.alpha.begin(), out.alpha.end());
  for (double& a : out.alpha) a /= lo;
  return out;
}

}  // namespace sparsetrig
