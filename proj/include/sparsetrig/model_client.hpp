#ifndef SPARSETRIG_MODEL_CLIENT_HPP
#define SPARSETRIG_MODEL_CLIENT_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sparsetrig/oracle.hpp"

namespace sparsetrig {

// File-exchange protocol to a black-box model. A batch is written as a
// request CSV (one point per row, d columns, 17 significant digits, '.'
// decimal separator, '\n' rows, no header). In command mode the backend is
// invoked as `command request.csv response.csv`; in exchange-directory mode
// the request is dropped into the directory and the response file is polled
// for. The response holds one value per row in request order. Rows that come
// back non-numeric or non-finite are retried individually; the whole batch
// fails if any point still fails after the configured retries.
struct ExternalModelSpec {
  std::string command;       // backend executable; empty when exchange_dir is used
  std::string exchange_dir;  // polled directory; empty when command is used
  int dim = 0;
  std::vector<Interval> domain;
  std::size_t batch_size = 0;      // 0 = one request per batch
  double timeout_seconds = 60.0;   // SPARSETRIG_MODEL_TIMEOUT env overrides
  int retries = 2;                 // per-point retries after the first attempt
  std::string workdir = ".";       // where request/response files live (command mode)
  bool keep_io = false;            // keep request/response files for inspection
};

// values of the backend at points given in domain coordinates
std::vector<double> external_batch(const ExternalModelSpec& spec,
                                   std::span<const std::vector<double>> points);

class ExternalModel : public ModelOracle {
 public:
  explicit ExternalModel(ExternalModelSpec spec);
  int dim() const override { return spec_.dim; }
  const std::vector<Interval>& domain() const override { return spec_.domain; }
  std::vector<double> evaluate_unit(std::span<const std::vector<double>> points) override;
  std::string spec() const override;

 private:
  ExternalModelSpec spec_;
};

// CSV helpers shared with the CLI; strict format, errors name the row
std::string format_csv_row(std::span<const double> values);
std::vector<std::vector<double>> parse_csv_points(const std::string& text, int expected_cols);

}  // namespace sparsetrig

#endif
