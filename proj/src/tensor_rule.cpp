#include "sparsetrig/tensor_rule.hpp"

#include <cmath>

#include "sparsetrig/errors.hpp"
#include "sparsetrig/fft3.hpp"
#include "sparsetrig/trig_basis.hpp"

namespace sparsetrig {

namespace {

std::vector<std::int64_t> level_sizes(const MultiIndex& level) {
  std::vector<std::int64_t> m(level.size());
  for (std::size_t k = 0; k < level.size(); ++k) m[k] = points_on_level(level[k]);
  return m;
}

std::int64_t total_size(const std::vector<std::int64_t>& m) {
  std::int64_t n = 1;
  for (auto v : m) n *= v;
  return n;
}

}  // namespace

TensorCoefficients::TensorCoefficients(MultiIndex level, std::vector<std::complex<double>> coeffs)
    : level_(std::move(level)), m_(level_sizes(level_)), coeffs_(std::move(coeffs)) {
  stride_.assign(m_.size(), 1);
  for (std::size_t k = m_.size(); k-- > 1;) stride_[k - 1] = stride_[k] * m_[k];
  if (static_cast<std::int64_t>(coeffs_.size()) != total_size(m_))
    throw InternalError("tensor coefficient array size mismatch");
}

std::vector<std::vector<double>> tensor_nodes(const MultiIndex& level) {
  const std::size_t d = level.size();
  auto m = level_sizes(level);
  std::vector<std::vector<double>> axis(d);
  for (std::size_t k = 0; k < d; ++k) axis[k] = nodes_1d(m[k]);
  std::int64_t n = total_size(m);
  std::vector<std::vector<double>> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  MultiIndex p(d, 0);
  for (std::int64_t c = 0; c < n; ++c) {
    std::vector<double> x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = axis[k][static_cast<std::size_t>(p[k])];
    nodes.push_back(std::move(x));
    for (std::size_t k = d; k-- > 0;) {
      if (++p[k] < m[k]) break;
      p[k] = 0;
    }
  }
  return nodes;
}

TensorCoefficients dft_coefficients(const MultiIndex& level, std::span<const double> samples) {
  const std::size_t d = level.size();
  auto m = level_sizes(level);
  const std::int64_t n = total_size(m);
  if (static_cast<std::int64_t>(samples.size()) != n)
    throw ConfigError("sample count does not match tensor size");

  std::vector<std::complex<double>> data(samples.begin(), samples.end());

  // row-column: transform every line along each axis
  std::vector<std::complex<double>> line, lineout;
  std::int64_t stride = 1;
  for (std::size_t k = d; k-- > 0;) {
    const std::int64_t mk = m[k];
    if (mk > 1) {
      line.resize(static_cast<std::size_t>(mk));
      lineout.resize(static_cast<std::size_t>(mk));
      const std::int64_t lines = n / mk;
      for (std::int64_t l = 0; l < lines; ++l) {
        // base offset skipping over the transformed axis
        std::int64_t base = (l / stride) * stride * mk + (l % stride);
        for (std::int64_t p = 0; p < mk; ++p) line[static_cast<std::size_t>(p)] = data[static_cast<std::size_t>(base + p * stride)];
        fft3_forward(line, lineout);
        for (std::int64_t p = 0; p < mk; ++p) data[static_cast<std::size_t>(base + p * stride)] = lineout[static_cast<std::size_t>(p)];
      }
    }
    stride *= mk;
  }

  // permute natural frequency order to sigma re-indexed order and normalize
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  const double norm = 1.0 / static_cast<double>(n);
  std::vector<std::vector<std::int64_t>> freq_of(d);
  for (std::size_t k = 0; k < d; ++k) {
    freq_of[k].resize(static_cast<std::size_t>(m[k]));
    for (std::int64_t nu = 0; nu < m[k]; ++nu) {
      std::int64_t f = sigma(nu) % m[k];
      if (f < 0) f += m[k];
      freq_of[k][static_cast<std::size_t>(nu)] = f;
    }
  }
  MultiIndex nu(d, 0);
  for (std::int64_t c = 0; c < n; ++c) {
    std::int64_t src = 0;
    for (std::size_t k = 0; k < d; ++k) src = src * m[k] + freq_of[k][static_cast<std::size_t>(nu[k])];
    out[static_cast<std::size_t>(c)] = data[static_cast<std::size_t>(src)] * norm;
    for (std::size_t k = d; k-- > 0;) {
      if (++nu[k] < m[k]) break;
      nu[k] = 0;
    }
  }
  return TensorCoefficients(level, std::move(out));
}

TensorCoefficients dft_coefficients(const MultiIndex& level, const SampleMap& samples) {
  const std::size_t d = level.size();
  auto m = level_sizes(level);
  const std::int64_t n = total_size(m);
  std::vector<double> natural(static_cast<std::size_t>(n));
  std::vector<std::vector<std::int64_t>> nat_of(d);
  for (std::size_t k = 0; k < d; ++k) {
    nat_of[k].resize(static_cast<std::size_t>(m[k]));
    for (std::int64_t nu = 0; nu < m[k]; ++nu)
      nat_of[k][static_cast<std::size_t>(nu)] = natural_node_index(nu, level[k]);
  }
  MultiIndex g(d, 0);
  for (std::int64_t c = 0; c < n; ++c) {
    auto it = samples.find(g);
    if (it == samples.end()) {
      std::string msg = "missing sample for node index (";
      for (std::size_t k = 0; k < d; ++k) msg += (k ? "," : "") + std::to_string(g[k]);
      throw OracleError(msg + ")");
    }
    std::int64_t off = 0;
    for (std::size_t k = 0; k < d; ++k) off = off * m[k] + nat_of[k][static_cast<std::size_t>(g[k])];
    natural[static_cast<std::size_t>(off)] = it->second;
    for (std::size_t k = d; k-- > 0;) {
      if (++g[k] < m[k]) break;
      g[k] = 0;
    }
  }
  return dft_coefficients(level, natural);
}

TensorCoefficients dft_coefficients_direct(const MultiIndex& level, std::span<const double> samples) {
  const std::size_t d = level.size();
  auto m = level_sizes(level);
  const std::int64_t n = total_size(m);
  if (static_cast<std::int64_t>(samples.size()) != n)
    throw ConfigError("sample count does not match tensor size");
  auto nodes = tensor_nodes(level);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  MultiIndex nu(d, 0);
  for (std::int64_t c = 0; c < n; ++c) {
    std::complex<double> acc(0.0, 0.0);
    for (std::int64_t p = 0; p < n; ++p) {
      std::complex<double> phi(1.0, 0.0);
      for (std::size_t k = 0; k < d; ++k) phi *= basis_eval(nu[k], nodes[static_cast<std::size_t>(p)][k]);
      acc += samples[static_cast<std::size_t>(p)] * std::conj(phi);
    }
    out[static_cast<std::size_t>(c)] = acc / static_cast<double>(n);
    for (std::size_t k = d; k-- > 0;) {
      if (++nu[k] < m[k]) break;
      nu[k] = 0;
    }
  }
  return TensorCoefficients(level, std::move(out));
}

double tensor_eval(const TensorCoefficients& coeffs, std::span<const double> x) {
  const auto& m = coeffs.points_per_dim();
  const std::size_t d = m.size();
  if (x.size() != d) throw ConfigError("evaluation point dimension mismatch");
  std::vector<std::vector<std::complex<double>>> table(d);
  for (std::size_t k = 0; k < d; ++k) {
    table[k].resize(static_cast<std::size_t>(m[k]));
    for (std::int64_t nu = 0; nu < m[k]; ++nu)
      table[k][static_cast<std::size_t>(nu)] = basis_eval(nu, x[k]);
  }
  // contract the dense array one axis at a time, innermost first
  std::vector<std::complex<double>> work(coeffs.values());
  std::int64_t size = static_cast<std::int64_t>(work.size());
  for (std::size_t k = d; k-- > 0;) {
    const std::int64_t mk = m[k];
    const std::int64_t reduced = size / mk;
    for (std::int64_t r = 0; r < reduced; ++r) {
      std::complex<double> acc(0.0, 0.0);
      for (std::int64_t nu = 0; nu < mk; ++nu)
        acc += work[static_cast<std::size_t>(r * mk + nu)] * table[k][static_cast<std::size_t>(nu)];
      work[static_cast<std::size_t>(r)] = acc;
    }
    size = reduced;
  }
  return work[0].real();
}

}  // namespace sparsetrig
