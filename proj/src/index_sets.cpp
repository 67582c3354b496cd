#include "sparsetrig/index_sets.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "sparsetrig/errors.hpp"

namespace sparsetrig {

LowerSet::LowerSet(int dim, std::vector<MultiIndex> indices) : dim_(dim), sorted_(std::move(indices)) {
  for (const auto& i : sorted_)
    if (static_cast<int>(i.size()) != dim_) throw ConfigError("multi-index dimension mismatch");
  std::sort(sorted_.begin(), sorted_.end());
  sorted_.erase(std::unique(sorted_.begin(), sorted_.end()), sorted_.end());
  members_.insert(sorted_.begin(), sorted_.end());
}

namespace {

void check_alpha(const std::vector<double>& alpha) {
  if (alpha.empty()) throw ConfigError("anisotropy vector must not be empty");
  for (double a : alpha)
    if (!(a > 0.0)) throw ConfigError("anisotropy components must be positive");
}

void enumerate_hyperbolic(const std::vector<double>& alpha, double budget, std::size_t k,
                          double used, MultiIndex& current, std::vector<MultiIndex>& out) {
  if (k == alpha.size()) {
    out.push_back(current);
    return;
  }
  for (std::int32_t i = 0;; ++i) {
    double cost = used + alpha[k] * std::log(static_cast<double>(i) + 1.0);
    if (cost > budget) break;
    current[k] = i;
    enumerate_hyperbolic(alpha, budget, k + 1, cost, current, out);
  }
  current[k] = 0;
}

void enumerate_total_degree(const std::vector<double>& alpha, double budget, std::size_t k,
                            double used, MultiIndex& current, std::vector<MultiIndex>& out) {
  if (k == alpha.size()) {
    out.push_back(current);
    return;
  }
  for (std::int32_t i = 0;; ++i) {
    double cost = used + alpha[k] * static_cast<double>(i);
    if (cost > budget) break;
    current[k] = i;
    enumerate_total_degree(alpha, budget, k + 1, cost, current, out);
  }
  current[k] = 0;
}

}  // namespace

LowerSet hyperbolic_set(const std::vector<double>& alpha, double level) {
  check_alpha(alpha);
  if (!(level >= 1.0)) throw ConfigError("hyperbolic level must be >= 1");
  // compare in log space; the tolerance keeps boundary indices stable under
  // the (c*alpha, L^c) reparameterization
  double log_level = std::log(level);
  double budget = log_level + 1e-12 * (1.0 + std::abs(log_level));
  MultiIndex current(alpha.size(), 0);
  std::vector<MultiIndex> out;
  enumerate_hyperbolic(alpha, budget, 0, 0.0, current, out);
  return LowerSet(static_cast<int>(alpha.size()), std::move(out));
}

LowerSet total_degree_set(const std::vector<double>& alpha, double level) {
  check_alpha(alpha);
  if (!(level >= 0.0)) throw ConfigError("total-degree level must be >= 0");
  double budget = level + 1e-12 * (1.0 + level);
  MultiIndex current(alpha.size(), 0);
  std::vector<MultiIndex> out;
  enumerate_total_degree(alpha, budget, 0, 0.0, current, out);
  return LowerSet(static_cast<int>(alpha.size()), std::move(out));
}

bool is_lower(std::span<const MultiIndex> indices) {
  MultiIndexSet members(indices.begin(), indices.end());
  MultiIndex pred;
  for (const auto& i : indices) {
    pred = i;
    for (std::size_t k = 0; k < pred.size(); ++k) {
      if (pred[k] == 0) continue;
      --pred[k];
      if (!members.count(pred)) return false;
      ++pred[k];
    }
  }
  return true;
}

LowerSet lower_completion(std::span<const MultiIndex> indices, int dim) {
  MultiIndexSet members(indices.begin(), indices.end());
  std::deque<MultiIndex> queue(indices.begin(), indices.end());
  while (!queue.empty()) {
    MultiIndex i = std::move(queue.front());
    queue.pop_front();
    for (std::size_t k = 0; k < i.size(); ++k) {
      if (i[k] == 0) continue;
      --i[k];
      if (members.insert(i).second) queue.push_back(i);
      ++i[k];
    }
  }
  return LowerSet(dim, std::vector<MultiIndex>(members.begin(), members.end()));
}

LowerSet union_lower(const LowerSet& a, const LowerSet& b) {
  if (a.dim() != b.dim()) throw ConfigError("cannot union lower sets of different dimension");
  std::vector<MultiIndex> merged = a.indices();
  merged.insert(merged.end(), b.indices().begin(), b.indices().end());
  LowerSet result(a.dim(), std::move(merged));
  if (!is_lower(result)) throw InternalError("union of lower sets is not lower");
  return result;
}

std::vector<MultiIndex> admissible_frontier(const LowerSet& s) {
  MultiIndexSet seen;
  std::vector<MultiIndex> frontier;
  auto consider = [&](MultiIndex c) {
    if (s.contains(c) || seen.count(c)) return;
    MultiIndex pred = c;
    for (std::size_t k = 0; k < pred.size(); ++k) {
      if (pred[k] == 0) continue;
      --pred[k];
      bool ok = s.contains(pred);
      ++pred[k];
      if (!ok) return;
    }
    seen.insert(c);
    frontier.push_back(std::move(c));
  };
  if (s.empty()) {
    consider(MultiIndex(s.dim(), 0));
  } else {
    for (const auto& i : s.indices()) {
      MultiIndex c = i;
      for (std::size_t k = 0; k < c.size(); ++k) {
        ++c[k];
        consider(c);
        --c[k];
      }
    }
  }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

nlohmann::json lower_set_to_json(const LowerSet& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& i : s.indices()) arr.push_back(i);
  return arr;
}

LowerSet lower_set_from_json(const nlohmann::json& j, int dim) {
  if (!j.is_array()) throw ConfigError("lower set JSON must be an array of integer arrays");
  std::vector<MultiIndex> indices;
  indices.reserve(j.size());
  for (const auto& e : j) indices.push_back(e.get<MultiIndex>());
  return LowerSet(dim, std::move(indices));
}

}  // namespace sparsetrig
