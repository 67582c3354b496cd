#ifndef SPARSETRIG_ERRORS_HPP
#define SPARSETRIG_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace sparsetrig {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: invalid parameters, malformed files, inconsistent flags.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// A model evaluation failed; carries the offending points when known.
class OracleError : public Error {
 public:
  OracleError(const std::string& what, std::vector<std::vector<double>> points = {})
      : Error(what), failed_points(std::move(points)) {}
  std::vector<std::vector<double>> failed_points;
};

// Anisotropy fit cannot be solved.
class FitError : public Error {
 public:
  explicit FitError(const std::string& what) : Error(what) {}
};

class UnderdeterminedFitError : public FitError {
 public:
  explicit UnderdeterminedFitError(const std::string& what) : FitError(what) {}
};

class RankDeficientFitError : public FitError {
 public:
  RankDeficientFitError(const std::string& what, int dim) : FitError(what), dimension(dim) {}
  int dimension;  // 1-based dimension lacking frequency variation
};

// Refinement cannot proceed within the sample budget.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(what) {}
};

// Broken internal invariant; maps to a distinct CLI exit code.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace sparsetrig

#endif
