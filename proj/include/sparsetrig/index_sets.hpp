#ifndef SPARSETRIG_INDEX_SETS_HPP
#define SPARSETRIG_INDEX_SETS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include <json.hpp>

namespace sparsetrig {

using MultiIndex = std::vector<std::int32_t>;

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ULL;
    }
    return h;
  }
};

using MultiIndexSet = std::unordered_set<MultiIndex, MultiIndexHash>;

// componentwise i <= j
inline bool leq(const MultiIndex& i, const MultiIndex& j) {
  for (std::size_t k = 0; k < i.size(); ++k)
    if (i[k] > j[k]) return false;
  return true;
}

// Finite downward-closed multi-index set. Indices are kept sorted
// lexicographically so equality and serialization are deterministic; a hash
// set backs O(1) membership tests.
class LowerSet {
 public:
  LowerSet() = default;
  explicit LowerSet(int dim) : dim_(dim) {}
  LowerSet(int dim, std::vector<MultiIndex> indices);

  int dim() const { return dim_; }
  std::size_t size() const { return sorted_.size(); }
  bool empty() const { return sorted_.empty(); }
  bool contains(const MultiIndex& i) const { return members_.count(i) != 0; }
  const std::vector<MultiIndex>& indices() const { return sorted_; }

  bool operator==(const LowerSet& other) const {
    return dim_ == other.dim_ && sorted_ == other.sorted_;
  }

 private:
  int dim_ = 0;
  std::vector<MultiIndex> sorted_;
  MultiIndexSet members_;
};

// Decay-rate vector plus the regularizing constant from the log-linear fit.
struct AnisotropyVector {
  std::vector<double> alpha;
  double cbar = 0.0;
};

// { i : prod_k (i_k+1)^alpha_k <= L }; requires alpha > 0 componentwise, L >= 1
LowerSet hyperbolic_set(const std::vector<double>& alpha, double level);

// { i : sum_k alpha_k i_k <= L }; requires alpha > 0 componentwise, L >= 0
LowerSet total_degree_set(const std::vector<double>& alpha, double level);

bool is_lower(std::span<const MultiIndex> indices);
inline bool is_lower(const LowerSet& s) { return is_lower(std::span(s.indices())); }

// smallest lower superset
LowerSet lower_completion(std::span<const MultiIndex> indices, int dim);

LowerSet union_lower(const LowerSet& a, const LowerSet& b);

// indices outside the set whose immediate predecessors are all inside
std::vector<MultiIndex> admissible_frontier(const LowerSet& s);

nlohmann::json lower_set_to_json(const LowerSet& s);
LowerSet lower_set_from_json(const nlohmann::json& j, int dim);

}  // namespace sparsetrig

#endif
