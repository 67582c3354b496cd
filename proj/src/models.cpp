#include "sparsetrig/models.hpp"

#include <bit>
#include <cmath>
#include <mutex>

#include <omp.h>

#include "sparsetrig/errors.hpp"
#include "sparsetrig/rng.hpp"

namespace sparsetrig {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

std::vector<Interval> symmetric_domain(int d) {
  return std::vector<Interval>(static_cast<std::size_t>(d), Interval{-1.0, 1.0});
}

template <typename F>
std::vector<double> map_points(const std::vector<Interval>& domain,
                               std::span<const std::vector<double>> points, F&& point_eval) {
  std::vector<double> out(points.size());
  const std::size_t d = domain.size();
#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < points.size(); ++p) {
    double x[16];
    for (std::size_t k = 0; k < d; ++k)
      x[k] = domain[k].lo + (domain[k].hi - domain[k].lo) * points[p][k];
    out[p] = point_eval(std::span<const double>(x, d));
  }
  return out;
}

}  // namespace

double g_poly(int k, double x) {
  const double x2 = x * x;
  switch (k) {
    case 1:
      return x * (x2 - 1.0);
    case 2:
      return x2 * (x2 / 4.0 - 0.5);
    case 3:
      return x * ((x2 / 20.0 - 1.0 / 6.0) * x2 + 7.0 / 60.0);
    case 4:
      return x2 * ((x2 / 120.0 - 1.0 / 24.0) * x2 + 7.0 / 120.0);
    case 5:
      return x * (((x2 / 840.0 - 1.0 / 120.0) * x2 + 7.0 / 360.0) * x2 - 31.0 / 2520.0);
    default:
      throw ConfigError("periodic polynomial order must be in 1..5, got " + std::to_string(k));
  }
}

double g_sup_norm(int k) {
  if (k == 1) return 2.0 / (3.0 * std::sqrt(3.0));  // critical points at +-1/sqrt(3)
  if (k < 1 || k > 5) throw ConfigError("periodic polynomial order must be in 1..5");
  static double cache[6] = {0};
  static std::once_flag once;
  std::call_once(once, [] {
    const int n = 1000000;
    for (int kk = 2; kk <= 5; ++kk) {
      double best = 0.0;
      for (int i = 0; i <= n; ++i) {
        double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n);
        best = std::max(best, std::abs(g_poly(kk, x)));
      }
      cache[kk] = best;
    }
  });
  return cache[k];
}

double h_poly(int k, double x) { return g_poly(k, x) / g_sup_norm(k); }

double product_eval(std::span<const int> orders, std::span<const double> x) {
  if (orders.size() != x.size()) throw ConfigError("product model dimension mismatch");
  double v = 1.0;
  for (std::size_t k = 0; k < orders.size(); ++k) v *= h_poly(orders[k], x[k]);
  return v;
}

double anisotropic_6d(std::span<const double> x) {
  if (x.size() != 6) throw ConfigError("anisotropic target needs 6 coordinates");
  return h_poly(1, x[0]) * h_poly(5, x[3]) + h_poly(2, x[1]) * h_poly(5, x[4]) +
         h_poly(3, x[2]) * h_poly(5, x[5]);
}

namespace pib {

double psi0(int n, double u) { return std::sqrt(2.0) * std::sin(static_cast<double>(n) * kPi * u); }

double energy0(int n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n) * kPi * kPi; }

namespace {

// [int_0^{1/4} + int_{3/4}^1] cos(k pi u) du
double wells_cos_integral(std::int64_t k) {
  if (k == 0) return 0.5;
  double a = static_cast<double>(k) * kPi;
  return (std::sin(a / 4.0) - std::sin(3.0 * a / 4.0)) / a;
}

// int_0^1 (u - 1/2)^2 cos(k pi u) du
double quadratic_cos_integral(std::int64_t k) {
  if (k == 0) return 1.0 / 12.0;
  double a = static_cast<double>(k) * kPi;
  double t = std::sin(a / 2.0) / (2.0 * a) + 2.0 * std::cos(a / 2.0) / (a * a) -
             4.0 * std::sin(a / 2.0) / (a * a * a);
  return std::cos(a / 2.0) * t;
}

}  // namespace

double well_integral(int n) {
  // 2 sin(n pi u) sin(2 pi u) = cos((n-2) pi u) - cos((n+2) pi u)
  return 15.0 * (wells_cos_integral(n - 2) - wells_cos_integral(n + 2));
}

double quadratic_integral(int n) {
  return 60.0 * (quadratic_cos_integral(n - 2) - quadratic_cos_integral(n + 2));
}

double x_correction_coefficient(int n) {
  if (n == 2) return 0.0;
  return well_integral(n) / (energy0(2) - energy0(n));
}

double y_correction_coefficient(int n) {
  if (n == 2) return 0.0;
  return quadratic_integral(n) / (energy0(2) - energy0(n));
}

namespace {

struct Series {
  std::vector<int> n;
  std::vector<double> coef;
};

// only even n carry nonzero integrals against the symmetric perturbations
const Series& x_series() {
  static Series s = [] {
    Series out;
    for (int n = 4; n <= kSeriesTerms; n += 2) {
      out.n.push_back(n);
      out.coef.push_back(x_correction_coefficient(n));
    }
    return out;
  }();
  return s;
}

const Series& y_series() {
  static Series s = [] {
    Series out;
    for (int n = 4; n <= kSeriesTerms; n += 2) {
      out.n.push_back(n);
      out.coef.push_back(y_correction_coefficient(n));
    }
    return out;
  }();
  return s;
}

double series_eval(const Series& s, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.n.size(); ++i)
    acc += s.coef[i] * std::sin(static_cast<double>(s.n[i]) * kPi * u);
  return std::sqrt(2.0) * acc;
}

}  // namespace

double x_correction(double x) { return series_eval(x_series(), x); }

double y_correction(double y) { return series_eval(y_series(), y); }

double wavefunction(double x, double y) {
  return (psi0(2, x) + x_correction(x)) * (psi0(2, y) + y_correction(y));
}

}  // namespace pib

ProductModel::ProductModel(std::vector<int> orders)
    : orders_(std::move(orders)), domain_(symmetric_domain(static_cast<int>(orders_.size()))) {
  if (orders_.empty() || orders_.size() > 15) throw ConfigError("product model needs 1..15 factors");
  for (int k : orders_)
    if (k < 1 || k > 5) throw ConfigError("product model orders must be in 1..5");
}

std::vector<double> ProductModel::evaluate_unit(std::span<const std::vector<double>> points) {
  return map_points(domain_, points,
                    [this](std::span<const double> x) { return product_eval(orders_, x); });
}

std::string ProductModel::spec() const {
  std::string s = "product:";
  for (std::size_t k = 0; k < orders_.size(); ++k) s += (k ? "," : "") + std::to_string(orders_[k]);
  return s;
}

Anisotropic6dModel::Anisotropic6dModel() : domain_(symmetric_domain(6)) {}

std::vector<double> Anisotropic6dModel::evaluate_unit(std::span<const std::vector<double>> points) {
  return map_points(domain_, points, [](std::span<const double> x) { return anisotropic_6d(x); });
}

PibModel::PibModel() : domain_(2, Interval{0.0, 1.0}) {
  pib::x_correction(0.5);  // force series construction outside the parallel region
  pib::y_correction(0.5);
}

std::vector<double> PibModel::evaluate_unit(std::span<const std::vector<double>> points) {
  return map_points(domain_, points,
                    [](std::span<const double> x) { return pib::wavefunction(x[0], x[1]); });
}

NoisyOracle::NoisyOracle(std::shared_ptr<ModelOracle> inner, double eps, std::uint64_t seed)
    : inner_(std::move(inner)), eps_(eps), seed_(seed) {
  if (!(eps_ >= 0.0)) throw ConfigError("noise amplitude must be nonnegative");
}

std::vector<double> NoisyOracle::evaluate_unit(std::span<const std::vector<double>> points) {
  std::vector<double> out = inner_->evaluate_unit(points);
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::uint64_t h = seed_ ^ 0x8f1bbcdcbfa53e0bULL;
    for (double c : points[p]) {
      h ^= std::bit_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    Pcg64 rng(h);
    out[p] += rng.uniform(-eps_, eps_);
  }
  return out;
}

std::string NoisyOracle::spec() const {
  return inner_->spec() + "+noise:" + std::to_string(eps_) + ":" + std::to_string(seed_);
}

std::shared_ptr<ModelOracle> make_builtin_model(const std::string& spec) {
  if (spec == "aniso6d") return std::make_shared<Anisotropic6dModel>();
  if (spec == "pib") return std::make_shared<PibModel>();
  if (spec.rfind("product:", 0) == 0) {
    std::vector<int> orders;
    std::string rest = spec.substr(8);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t comma = rest.find(',', pos);
      std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        orders.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ConfigError("bad product model order: '" + tok + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return std::make_shared<ProductModel>(std::move(orders));
  }
  throw ConfigError("unknown builtin model: " + spec);
}

}  // namespace sparsetrig
