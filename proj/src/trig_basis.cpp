#include "sparsetrig/trig_basis.hpp"

#include <cmath>

#include "sparsetrig/errors.hpp"

namespace sparsetrig {

std::int64_t points_on_level(int level) {
  if (level < 0 || level > 39) throw ConfigError("rule level out of range: " + std::to_string(level));
  std::int64_t m = 1;
  for (int i = 0; i < level; ++i) m *= 3;
  return m;
}

int level_of_node(std::int64_t nu) {
  if (nu < 0) throw ConfigError("negative node index");
  int level = 0;
  std::int64_t m = 1;
  while (m <= nu) {
    m *= 3;
    ++level;
  }
  return level;
}

std::vector<double> nodes_1d(std::int64_t m) {
  if (m < 1 || m % 2 == 0)
    throw ConfigError("rule size must be a positive odd integer, got " + std::to_string(m));
  std::vector<double> nodes(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j) nodes[static_cast<std::size_t>(j)] = static_cast<double>(j) / static_cast<double>(m);
  return nodes;
}

double node_coordinate(std::int64_t nu) {
  if (nu == 0) return 0.0;
  int level = level_of_node(nu);
  std::int64_t r = nu - points_on_level(level - 1);
  std::int64_t j = 3 * (r / 2) + 1 + (r % 2);  // skip multiples of 3: those live on coarser levels
  return static_cast<double>(j) / static_cast<double>(points_on_level(level));
}

std::int64_t natural_node_index(std::int64_t nu, int level) {
  if (nu == 0) return 0;
  int first = level_of_node(nu);
  if (first > level) throw InternalError("node index beyond rule level");
  std::int64_t r = nu - points_on_level(first - 1);
  std::int64_t j = 3 * (r / 2) + 1 + (r % 2);
  return j * points_on_level(level - first);
}

std::int64_t nested_node_index(std::int64_t p, int level) {
  if (p == 0) return 0;
  if (p < 0 || p >= points_on_level(level)) throw InternalError("natural node index out of range");
  int first = level;
  while (p % 3 == 0) {
    p /= 3;
    --first;
  }
  // p is now the reduced index at its first level; order new nodes by ascending p
  return points_on_level(first - 1) + 2 * (p / 3) + (p % 3) - 1;
}

std::complex<double> basis_eval(std::int64_t nu, double x) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::polar(1.0, two_pi * static_cast<double>(sigma(nu)) * x);
}

}  // namespace sparsetrig
