#ifndef SPARSETRIG_TRIG_BASIS_HPP
#define SPARSETRIG_TRIG_BASIS_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace sparsetrig {

// One-dimensional trigonometric rule machinery: equispaced nodes x_j = j/m
// with odd m growing as m(l) = 3^l, the re-indexing sigma that folds signed
// frequencies onto nonnegative labels, and complex basis evaluation.
//
// Two indexings of nodes coexist:
//  * "natural" index p of an m-point rule, coordinate p/m, p = 0..m-1;
//  * "nested" (global) index nu, which enumerates the nested node family so
//    that the first 3^l indices are exactly the nodes of the 3^l-point rule.
// Node identity across levels is index arithmetic (natural p at level l is
// natural 3p at level l+1); coordinates are always computed from the reduced
// form, so equal nodes compare equal as doubles with no tolerance.

// sigma(0)=0, sigma(1)=1, sigma(2)=-1, sigma(3)=2, sigma(4)=-2, ...
inline std::int64_t sigma(std::int64_t nu) {
  return (nu % 2 == 0) ? -(nu / 2) : (nu + 1) / 2;
}

// |sigma(nu)| = ceil(nu/2)
inline std::int64_t sigma_abs(std::int64_t nu) { return (nu + 1) / 2; }

// m(l) = 3^l
std::int64_t points_on_level(int level);

// smallest level whose rule contains the nested node index nu
int level_of_node(std::int64_t nu);

// nodes [0, 1/m, ..., (m-1)/m]; rejects even or non-positive m
std::vector<double> nodes_1d(std::int64_t m);

// coordinate of the nested node index, computed from its reduced fraction
double node_coordinate(std::int64_t nu);

// natural index of nested node nu within the 3^level-point rule; requires
// nu < 3^level
std::int64_t natural_node_index(std::int64_t nu, int level);

// nested index of the natural node p of the 3^level-point rule
std::int64_t nested_node_index(std::int64_t p, int level);

// exp(2*pi*i*sigma(nu)*x)
std::complex<double> basis_eval(std::int64_t nu, double x);

}  // namespace sparsetrig

#endif
