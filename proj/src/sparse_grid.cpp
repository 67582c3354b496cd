#include "sparsetrig/sparse_grid.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <omp.h>

#include "sparsetrig/errors.hpp"
#include "sparsetrig/trig_basis.hpp"

namespace sparsetrig {

namespace {

// condition index of a tensor level: first basis label the level introduces
MultiIndex condition_index(const MultiIndex& level) {
  MultiIndex c(level.size());
  for (std::size_t k = 0; k < level.size(); ++k)
    c[k] = level[k] == 0 ? 0 : static_cast<std::int32_t>(points_on_level(level[k] - 1));
  return c;
}

void enumerate_levels(const LowerSet& lambda, std::size_t k, MultiIndex& level, MultiIndex& cond,
                      std::vector<MultiIndex>& out) {
  if (k == level.size()) {
    out.push_back(level);
    return;
  }
  for (std::int32_t l = 0;; ++l) {
    cond[k] = l == 0 ? 0 : static_cast<std::int32_t>(points_on_level(l - 1));
    if (!lambda.contains(cond)) break;  // anti-monotone in each coordinate
    level[k] = l;
    enumerate_levels(lambda, k + 1, level, cond, out);
  }
  level[k] = 0;
  cond[k] = 0;
}

template <typename F>
void for_each_box_index(const std::vector<std::int64_t>& m, F&& f) {
  const std::size_t d = m.size();
  MultiIndex j(d, 0);
  for (;;) {
    f(j);
    std::size_t k = d;
    while (k-- > 0) {
      if (++j[k] < m[k]) break;
      j[k] = 0;
      if (k == 0) return;
    }
  }
}

std::vector<std::int64_t> box_sizes(const MultiIndex& level) {
  std::vector<std::int64_t> m(level.size());
  for (std::size_t k = 0; k < level.size(); ++k) m[k] = points_on_level(level[k]);
  return m;
}

}  // namespace

LowerSet optimal_tensors(const LowerSet& lambda) {
  if (lambda.empty()) return LowerSet(lambda.dim());
  MultiIndex level(lambda.dim(), 0), cond(lambda.dim(), 0);
  std::vector<MultiIndex> out;
  enumerate_levels(lambda, 0, level, cond, out);
  return LowerSet(lambda.dim(), std::move(out));
}

CombinationMap combination_coefficients(const LowerSet& theta) {
  // descending lexicographic order puts every i >= j before j
  std::vector<MultiIndex> order = theta.indices();
  std::reverse(order.begin(), order.end());
  CombinationMap t;
  t.reserve(order.size());
  std::vector<std::pair<const MultiIndex*, int>> nonzero;
  for (const auto& j : order) {
    int sum = 0;
    for (const auto& [i, ti] : nonzero)
      if (leq(j, *i)) sum += ti;
    int tj = 1 - sum;
    t.emplace(j, tj);
    if (tj != 0) nonzero.emplace_back(&t.find(j)->first, tj);
  }
  return t;
}

LowerSet node_set(const LowerSet& theta) {
  MultiIndexSet nodes;
  for (const auto& level : theta.indices()) {
    auto m = box_sizes(level);
    for_each_box_index(m, [&](const MultiIndex& j) { nodes.insert(j); });
  }
  return LowerSet(theta.dim(), std::vector<MultiIndex>(nodes.begin(), nodes.end()));
}

WeightMap assemble_weights(
    const LowerSet& theta, const CombinationMap& t,
    const std::unordered_map<MultiIndex, TensorCoefficients, MultiIndexHash>& per_tensor) {
  WeightMap w;
  for (const auto& level : theta.indices()) {
    auto it = t.find(level);
    int ti = it == t.end() ? 0 : it->second;
    if (ti == 0) continue;
    auto ct = per_tensor.find(level);
    if (ct == per_tensor.end()) {
      std::string msg = "missing tensor coefficients for level (";
      for (std::size_t k = 0; k < level.size(); ++k) msg += (k ? "," : "") + std::to_string(level[k]);
      throw ConfigError(msg + ") with nonzero combination coefficient");
    }
    const auto& coeffs = ct->second;
    auto m = box_sizes(level);
    const double td = static_cast<double>(ti);
    std::size_t off = 0;
    for_each_box_index(m, [&](const MultiIndex& j) { w[j] += td * coeffs.values()[off++]; });
  }
  return w;
}

const LowerSet& SparseGrid::node_indices() const {
  if (!sorted_nodes_) {
    std::vector<MultiIndex> keys;
    keys.reserve(samples_.size());
    for (const auto& [j, v] : samples_) keys.push_back(j);
    sorted_nodes_ = LowerSet(dim_, std::move(keys));
  }
  return *sorted_nodes_;
}

const TensorCoefficients& SparseGrid::tensor_coefficients(const MultiIndex& level) const {
  auto it = tensor_cache_.find(level);
  if (it == tensor_cache_.end())
    it = tensor_cache_.emplace(level, dft_coefficients(level, samples_)).first;
  return it->second;
}

std::size_t SparseGrid::extend(const LowerSet& new_theta, ModelOracle& oracle) {
  if (new_theta.dim() != dim_) throw ConfigError("tensor set dimension mismatch");
  if (oracle.dim() != dim_) throw ConfigError("oracle dimension mismatch");
  if (theta_.dim() == 0 && dim_ > 0) theta_ = LowerSet(dim_);

  std::vector<MultiIndex> added;
  for (const auto& level : new_theta.indices())
    if (!theta_.contains(level)) added.push_back(level);
  if (added.empty()) return 0;

  // gather nodes to sample before touching any state
  MultiIndexSet pending;
  std::vector<MultiIndex> new_nodes;
  for (const auto& level : added) {
    auto m = box_sizes(level);
    for_each_box_index(m, [&](const MultiIndex& j) {
      if (!samples_.count(j) && pending.insert(j).second) new_nodes.push_back(j);
    });
  }

  std::vector<std::vector<double>> coords;
  coords.reserve(new_nodes.size());
  for (const auto& j : new_nodes) {
    std::vector<double> x(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) x[k] = node_coordinate(j[k]);
    coords.push_back(std::move(x));
  }
  std::vector<double> values = oracle.evaluate_unit(coords);
  if (values.size() != new_nodes.size())
    throw OracleError("oracle returned " + std::to_string(values.size()) + " values for " +
                      std::to_string(new_nodes.size()) + " points");

  // commit
  for (std::size_t p = 0; p < new_nodes.size(); ++p) samples_.emplace(new_nodes[p], values[p]);
  {
    std::vector<MultiIndex> merged = theta_.indices();
    merged.insert(merged.end(), added.begin(), added.end());
    theta_ = LowerSet(dim_, std::move(merged));
  }

  CombinationMap t_new = combination_coefficients(theta_);
  std::vector<std::pair<MultiIndex, int>> deltas;
  for (const auto& [level, ti] : t_new) {
    auto old = t_.find(level);
    int delta = ti - (old == t_.end() ? 0 : old->second);
    if (delta != 0) deltas.emplace_back(level, delta);
  }
  std::sort(deltas.begin(), deltas.end());

  // fill the DFT cache for every tensor we are about to merge
  std::vector<const MultiIndex*> missing;
  for (const auto& [level, delta] : deltas)
    if (!tensor_cache_.count(level)) missing.push_back(&level);
  std::vector<std::pair<const MultiIndex*, TensorCoefficients>> computed(
      missing.size(), {nullptr, TensorCoefficients(MultiIndex{}, {std::complex<double>(0.0, 0.0)})});
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < missing.size(); ++i)
    computed[i] = {missing[i], dft_coefficients(*missing[i], samples_)};
  for (auto& [level, coeffs] : computed) tensor_cache_.emplace(*level, std::move(coeffs));

  for (const auto& [level, delta] : deltas) {
    const auto& coeffs = tensor_cache_.at(level);
    auto m = box_sizes(level);
    const double td = static_cast<double>(delta);
    std::size_t off = 0;
    for_each_box_index(m, [&](const MultiIndex& j) { weights_[j] += td * coeffs.values()[off++]; });
  }

  t_ = std::move(t_new);
  sorted_nodes_.reset();
  frozen_valid_ = false;
  return new_nodes.size();
}

void SparseGrid::restore(LowerSet theta, CombinationMap t, SampleMap samples, WeightMap weights) {
  theta_ = std::move(theta);
  dim_ = theta_.dim();
  t_ = std::move(t);
  samples_ = std::move(samples);
  weights_ = std::move(weights);
  tensor_cache_.clear();
  sorted_nodes_.reset();
  frozen_valid_ = false;
}

void SparseGrid::freeze() const {
  std::vector<std::pair<const MultiIndex*, std::complex<double>>> entries;
  entries.reserve(weights_.size());
  for (const auto& [j, w] : weights_) entries.emplace_back(&j, w);
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return *a.first < *b.first; });
  const std::size_t d = static_cast<std::size_t>(dim_);
  frozen_idx_.assign(entries.size() * d, 0);
  frozen_w_.resize(entries.size());
  max_nu_.assign(d, 0);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const MultiIndex& j = *entries[r].first;
    for (std::size_t k = 0; k < d; ++k) {
      frozen_idx_[r * d + k] = j[k];
      max_nu_[k] = std::max(max_nu_[k], j[k]);
    }
    frozen_w_[r] = entries[r].second;
  }
  frozen_valid_ = true;
}

namespace {

struct EvalScratch {
  std::vector<std::complex<double>> table;  // per-dim basis values, concatenated
  std::vector<std::size_t> offset;
  std::vector<std::complex<double>> prefix;
  std::vector<std::int32_t> prev;
};

// fills the scratch tables with phi_nu(x_k) for nu = 0..max_nu[k]
void fill_tables(std::span<const std::int32_t> max_nu, std::span<const double> x, EvalScratch& s) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  const std::size_t d = max_nu.size();
  s.offset.resize(d + 1);
  s.offset[0] = 0;
  for (std::size_t k = 0; k < d; ++k)
    s.offset[k + 1] = s.offset[k] + static_cast<std::size_t>(max_nu[k]) + 1;
  s.table.resize(s.offset[d]);
  s.prefix.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::complex<double>* t = s.table.data() + s.offset[k];
    const std::int32_t top = max_nu[k];
    t[0] = {1.0, 0.0};
    if (top == 0) continue;
    const std::complex<double> z = std::polar(1.0, two_pi * x[k]);
    std::complex<double> zg = z;
    for (std::int32_t g = 1;; ++g) {
      if (g % 16 == 0) zg = std::polar(1.0, two_pi * static_cast<double>(g) * x[k]);
      std::int32_t nu_pos = 2 * g - 1;
      if (nu_pos <= top) t[nu_pos] = zg;
      if (nu_pos + 1 <= top)
        t[nu_pos + 1] = std::conj(zg);
      else
        break;
      if (nu_pos + 1 == top) break;
      zg *= z;
    }
  }
}

}  // namespace

double SparseGrid::eval(std::span<const double> x) const {
  if (!frozen_valid_) freeze();
  if (x.size() != static_cast<std::size_t>(dim_)) throw ConfigError("evaluation point dimension mismatch");
  if (frozen_w_.empty()) return 0.0;
  static thread_local EvalScratch scratch;
  fill_tables(max_nu_, x, scratch);

  const std::size_t d = static_cast<std::size_t>(dim_);
  const std::size_t n = frozen_w_.size();
  scratch.prev.assign(d, -1);
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const std::int32_t* row = frozen_idx_.data() + r * d;
    std::size_t fd = 0;
    while (fd < d && row[fd] == scratch.prev[fd]) ++fd;
    for (std::size_t k = fd; k < d; ++k) {
      std::complex<double> phi = scratch.table[scratch.offset[k] + static_cast<std::size_t>(row[k])];
      scratch.prefix[k] = k == 0 ? phi : scratch.prefix[k - 1] * phi;
      scratch.prev[k] = row[k];
    }
    acc += frozen_w_[r] * scratch.prefix[d - 1];
  }
  return acc.real();
}

void SparseGrid::eval_batch(std::span<const std::vector<double>> points, std::span<double> out) const {
  if (out.size() != points.size()) throw InternalError("eval_batch output size mismatch");
  if (!frozen_valid_) freeze();
#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < points.size(); ++p) out[p] = eval(points[p]);
}

void SparseGrid::eval_batch_serial(std::span<const std::vector<double>> points,
                                   std::span<double> out) const {
  if (out.size() != points.size()) throw InternalError("eval_batch output size mismatch");
  for (std::size_t p = 0; p < points.size(); ++p) out[p] = eval(points[p]);
}

SparseGrid refine_grid(const SparseGrid& grid, const LowerSet& new_theta, ModelOracle& oracle) {
  SparseGrid next = grid;
  next.extend(new_theta, oracle);
  return next;
}

nlohmann::json grid_to_json(const GridDocument& doc) {
  const SparseGrid& g = doc.grid;
  nlohmann::json j;
  j["format"] = 1;
  j["dim"] = g.dim();
  nlohmann::json dom = nlohmann::json::array();
  for (const auto& iv : doc.domain) dom.push_back({iv.lo, iv.hi});
  j["domain"] = dom;
  j["model"] = doc.model_spec;
  j["space"] = doc.space;
  j["seed"] = doc.seed;
  j["lambda"] = lower_set_to_json(doc.lambda);
  j["theta"] = lower_set_to_json(g.tensors());

  std::vector<MultiIndex> levels = g.tensors().indices();
  nlohmann::json tvals = nlohmann::json::array();
  for (const auto& level : levels) tvals.push_back(g.combination().at(level));
  j["t_coeffs"] = tvals;  // aligned with "theta"

  const LowerSet& nodes = g.node_indices();
  j["indices"] = lower_set_to_json(nodes);
  nlohmann::json samples = nlohmann::json::array();
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& idx : nodes.indices()) {
    samples.push_back(g.samples().at(idx));
    auto it = g.weights().find(idx);
    std::complex<double> w = it == g.weights().end() ? std::complex<double>(0.0, 0.0) : it->second;
    weights.push_back({w.real(), w.imag()});
  }
  j["samples"] = samples;
  j["weights"] = weights;
  return j;
}

GridDocument grid_from_json(const nlohmann::json& j) {
  if (!j.contains("format") || j["format"].get<int>() != 1)
    throw ConfigError("unsupported grid file format");
  GridDocument doc;
  int dim = j.at("dim").get<int>();
  for (const auto& iv : j.at("domain")) doc.domain.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
  if (static_cast<int>(doc.domain.size()) != dim) throw ConfigError("grid file domain dimension mismatch");
  doc.model_spec = j.at("model").get<std::string>();
  doc.space = j.at("space").get<std::string>();
  doc.seed = j.at("seed").get<std::uint64_t>();
  doc.lambda = lower_set_from_json(j.at("lambda"), dim);

  LowerSet theta = lower_set_from_json(j.at("theta"), dim);
  CombinationMap t;
  const auto& tvals = j.at("t_coeffs");
  if (tvals.size() != theta.size()) throw ConfigError("t_coeffs length does not match theta");
  for (std::size_t i = 0; i < theta.size(); ++i) t.emplace(theta.indices()[i], tvals[i].get<int>());

  LowerSet nodes = lower_set_from_json(j.at("indices"), dim);
  const auto& samples = j.at("samples");
  const auto& weights = j.at("weights");
  if (samples.size() != nodes.size() || weights.size() != nodes.size())
    throw ConfigError("samples/weights length does not match node indices");
  SampleMap smap;
  WeightMap wmap;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    smap.emplace(nodes.indices()[i], samples[i].get<double>());
    wmap.emplace(nodes.indices()[i],
                 std::complex<double>(weights[i].at(0).get<double>(), weights[i].at(1).get<double>()));
  }
  doc.grid.restore(std::move(theta), std::move(t), std::move(smap), std::move(wmap));
  return doc;
}

void save_grid(const GridDocument& doc, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError("cannot write grid file: " + tmp);
    out << grid_to_json(doc).dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

GridDocument load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grid file: " + path);
  nlohmann::json j;
  in >> j;
  return grid_from_json(j);
}

}  // namespace sparsetrig
