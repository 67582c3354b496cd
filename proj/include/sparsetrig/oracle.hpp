#ifndef SPARSETRIG_ORACLE_HPP
#define SPARSETRIG_ORACLE_HPP

#include <span>
#include <string>
#include <vector>

namespace sparsetrig {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Batched evaluator of the target function. All callers work on the unit
// cube; implementations apply the affine map to their own domain, so the
// rest of the library never sees user coordinates.
class ModelOracle {
 public:
  virtual ~ModelOracle() = default;

  virtual int dim() const = 0;
  virtual const std::vector<Interval>& domain() const = 0;

  // values of the target at points in [0,1]^d, in request order
  virtual std::vector<double> evaluate_unit(std::span<const std::vector<double>> points) = 0;

  // round-trippable description, recorded in manifests and grid files
  virtual std::string spec() const = 0;

  double to_domain(int k, double u) const {
    const Interval& iv = domain()[static_cast<std::size_t>(k)];
    return iv.lo + (iv.hi - iv.lo) * u;
  }
  double to_unit(int k, double x) const {
    const Interval& iv = domain()[static_cast<std::size_t>(k)];
    return (x - iv.lo) / (iv.hi - iv.lo);
  }
};

}  // namespace sparsetrig

#endif
