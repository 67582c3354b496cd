#ifndef SPARSETRIG_MODELS_HPP
#define SPARSETRIG_MODELS_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sparsetrig/oracle.hpp"

namespace sparsetrig {

// Periodic polynomial family on [-1,1]: g_1 = x^3 - x and its repeated
// antiderivatives with the integration constants chosen so that g_k has k
// periodic derivatives; the (k+1)-th derivative jumps across the boundary.
double g_poly(int k, double x);

// sup norm of g_k on [-1,1]; closed form for k = 1, dense sampling (cached)
// for k >= 2
double g_sup_norm(int k);

// h_k = g_k / ||g_k||_inf
double h_poly(int k, double x);

// f_i(x) = prod_k h_{i_k}(x_k) on [-1,1]^d
double product_eval(std::span<const int> orders, std::span<const double> x);

// h1(x1)h5(x4) + h2(x2)h5(x5) + h3(x3)h5(x6) on [-1,1]^6; known rates
// alpha = (3,4,5,7,7,7)
double anisotropic_6d(std::span<const double> x);

// Perturbed two-dimensional particle in a box, first-order corrections with
// the series truncated at N terms.
namespace pib {

constexpr int kSeriesTerms = 10000;

double psi0(int n, double u);                // sqrt(2) sin(n pi u)
double energy0(int n);                       // n^2 pi^2 / 2
double well_integral(int n);                 // int psi_n f1 psi_2, f1 the side wells
double quadratic_integral(int n);            // int psi_n f2 psi_2, f2 = 60 (u - 1/2)^2
double x_correction_coefficient(int n);      // well_integral / (E_2 - E_n)
double y_correction_coefficient(int n);
double x_correction(double x);
double y_correction(double y);
double wavefunction(double x, double y);     // Psi_{2,2}

}  // namespace pib

// oracle over [-1,1]^d evaluating a product of h_k factors
class ProductModel : public ModelOracle {
 public:
  explicit ProductModel(std::vector<int> orders);
  int dim() const override { return static_cast<int>(orders_.size()); }
  const std::vector<Interval>& domain() const override { return domain_; }
  std::vector<double> evaluate_unit(std::span<const std::vector<double>> points) override;
  std::string spec() const override;

 private:
  std::vector<int> orders_;
  std::vector<Interval> domain_;
};

class Anisotropic6dModel : public ModelOracle {
 public:
  Anisotropic6dModel();
  int dim() const override { return 6; }
  const std::vector<Interval>& domain() const override { return domain_; }
  std::vector<double> evaluate_unit(std::span<const std::vector<double>> points) override;
  std::string spec() const override { return "aniso6d"; }

 private:
  std::vector<Interval> domain_;
};

class PibModel : public ModelOracle {
 public:
  PibModel();
  int dim() const override { return 2; }
  const std::vector<Interval>& domain() const override { return domain_; }
  std::vector<double> evaluate_unit(std::span<const std::vector<double>> points) override;
  std::string spec() const override { return "pib"; }

 private:
  std::vector<Interval> domain_;
};

// Adds deterministic uniform noise in [-eps, eps] to another oracle; the
// perturbation depends only on (seed, point), so repeated evaluation of the
// same point returns the same value.
class NoisyOracle : public ModelOracle {
 public:
  NoisyOracle(std::shared_ptr<ModelOracle> inner, double eps, std::uint64_t seed);
  int dim() const override { return inner_->dim(); }
  const std::vector<Interval>& domain() const override { return inner_->domain(); }
  std::vector<double> evaluate_unit(std::span<const std::vector<double>> points) override;
  std::string spec() const override;

 private:
  std::shared_ptr<ModelOracle> inner_;
  double eps_;
  std::uint64_t seed_;
};

// "product:1,2", "aniso6d", "pib" -- external models are assembled by the
// CLI on top of model_client
std::shared_ptr<ModelOracle> make_builtin_model(const std::string& spec);

}  // namespace sparsetrig

#endif
