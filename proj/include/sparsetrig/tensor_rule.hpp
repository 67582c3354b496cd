#ifndef SPARSETRIG_TENSOR_RULE_HPP
#define SPARSETRIG_TENSOR_RULE_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "sparsetrig/index_sets.hpp"

namespace sparsetrig {

using SampleMap = std::unordered_map<MultiIndex, double, MultiIndexHash>;

// Interpolation coefficients of one full tensor, stored densely in
// lexicographic order of the re-indexed basis label nu (row-major, last
// dimension fastest). Downstream code only ever sees nu-indexing; the
// natural-frequency DFT layout is permuted away inside dft_coefficients.
class TensorCoefficients {
 public:
  TensorCoefficients(MultiIndex level, std::vector<std::complex<double>> coeffs);

  const MultiIndex& level() const { return level_; }
  const std::vector<std::int64_t>& points_per_dim() const { return m_; }
  std::int64_t node_count() const { return static_cast<std::int64_t>(coeffs_.size()); }
  const std::vector<std::complex<double>>& values() const { return coeffs_; }

  std::size_t offset(const MultiIndex& nu) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < nu.size(); ++k)
      off += static_cast<std::size_t>(nu[k]) * static_cast<std::size_t>(stride_[k]);
    return off;
  }
  std::complex<double> coeff(const MultiIndex& nu) const { return coeffs_[offset(nu)]; }

 private:
  MultiIndex level_;
  std::vector<std::int64_t> m_;
  std::vector<std::int64_t> stride_;
  std::vector<std::complex<double>> coeffs_;
};

// nodes of the full tensor with levels i, ordered lexicographically by the
// natural node index
std::vector<std::vector<double>> tensor_nodes(const MultiIndex& level);

// samples in natural (lexicographic) node order -> interpolation coefficients
TensorCoefficients dft_coefficients(const MultiIndex& level, std::span<const double> samples);

// gathers the tensor's samples from a map keyed by nested node indices;
// throws OracleError naming the first missing node
TensorCoefficients dft_coefficients(const MultiIndex& level, const SampleMap& samples);

// same result as dft_coefficients but through the O(M^2) direct sum; the
// serial reference used by tests and the benchmark
TensorCoefficients dft_coefficients_direct(const MultiIndex& level, std::span<const double> samples);

// real part of sum_nu c_nu * prod_k phi_{nu_k}(x_k)
double tensor_eval(const TensorCoefficients& coeffs, std::span<const double> x);

}  // namespace sparsetrig

#endif
