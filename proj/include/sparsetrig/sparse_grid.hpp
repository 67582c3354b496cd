#ifndef SPARSETRIG_SPARSE_GRID_HPP
#define SPARSETRIG_SPARSE_GRID_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sparsetrig/index_sets.hpp"
#include "sparsetrig/oracle.hpp"
#include "sparsetrig/tensor_rule.hpp"

namespace sparsetrig {

using CombinationMap = std::unordered_map<MultiIndex, int, MultiIndexHash>;
using WeightMap = std::unordered_map<MultiIndex, std::complex<double>, MultiIndexHash>;

// tensor levels needed for exactness on the basis set lambda:
// { i : m(i-1) in lambda componentwise }, with m(-1) = 0
LowerSet optimal_tensors(const LowerSet& lambda);

// unique integer solution of sum_{i in theta, i >= j} t_i = 1 for all j,
// solved by back-substitution in descending lexicographic order
CombinationMap combination_coefficients(const LowerSet& theta);

// nested node indices covered by the tensor set: union of boxes j <= m(i)-1
LowerSet node_set(const LowerSet& theta);

// w_j = sum_{i : j <= m(i)-1} t_i * c^i_j; tensors with t_i = 0 are skipped
WeightMap assemble_weights(const LowerSet& theta, const CombinationMap& t,
                           const std::unordered_map<MultiIndex, TensorCoefficients, MultiIndexHash>& per_tensor);

// Combination-technique sparse trigonometric interpolant. Owns the samples,
// combination coefficients, per-tensor DFT cache, and the assembled global
// weights; evaluation runs off a frozen sorted snapshot of the weights.
class SparseGrid {
 public:
  SparseGrid() = default;
  explicit SparseGrid(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const LowerSet& tensors() const { return theta_; }
  const CombinationMap& combination() const { return t_; }
  const SampleMap& samples() const { return samples_; }
  const WeightMap& weights() const { return weights_; }
  std::size_t node_count() const { return samples_.size(); }

  // canonical (sorted) node index set; rebuilt lazily after refinement
  const LowerSet& node_indices() const;

  // Extends the tensor set to theta_ u new_theta. Samples the oracle only at
  // nodes not already known, then refreshes combination coefficients and
  // weights incrementally. Returns the number of new nodes sampled. Strong
  // exception guarantee: on oracle failure the grid is unchanged.
  std::size_t extend(const LowerSet& new_theta, ModelOracle& oracle);

  double eval(std::span<const double> x) const;

  void eval_batch(std::span<const std::vector<double>> points, std::span<double> out) const;
  // serial reference for the OpenMP batch path
  void eval_batch_serial(std::span<const std::vector<double>> points, std::span<double> out) const;

  // direct access for persistence; trusts the caller to pass consistent data
  void restore(LowerSet theta, CombinationMap t, SampleMap samples, WeightMap weights);

  const TensorCoefficients& tensor_coefficients(const MultiIndex& level) const;

 private:
  void freeze() const;

  int dim_ = 0;
  LowerSet theta_;
  CombinationMap t_;
  SampleMap samples_;
  WeightMap weights_;

  mutable std::unordered_map<MultiIndex, TensorCoefficients, MultiIndexHash> tensor_cache_;
  mutable std::optional<LowerSet> sorted_nodes_;

  // frozen evaluation snapshot: row-major flattened indices + weights
  mutable bool frozen_valid_ = false;
  mutable std::vector<std::int32_t> frozen_idx_;
  mutable std::vector<std::complex<double>> frozen_w_;
  mutable std::vector<std::int32_t> max_nu_;
};

SparseGrid refine_grid(const SparseGrid& grid, const LowerSet& new_theta, ModelOracle& oracle);

// Grid file payload: the interpolant plus the refinement target set and the
// run metadata needed to resume or evaluate it later.
struct GridDocument {
  SparseGrid grid;
  LowerSet lambda;
  std::vector<Interval> domain;
  std::string model_spec;
  std::string space = "hyperbolic";
  std::uint64_t seed = 0;
};

nlohmann::json grid_to_json(const GridDocument& doc);
GridDocument grid_from_json(const nlohmann::json& j);

void save_grid(const GridDocument& doc, const std::string& path);  // atomic replace
GridDocument load_grid(const std::string& path);

}  // namespace sparsetrig

#endif
