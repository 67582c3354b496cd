#include "sparsetrig/model_client.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include "sparsetrig/errors.hpp"

namespace sparsetrig {

namespace fs = std::filesystem;

std::string format_csv_row(std::span<const double> values) {
  std::string row;
  char buf[40];
  for (std::size_t k = 0; k < values.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", values[k]);
    if (k) row += ',';
    row += buf;
  }
  row += '\n';
  return row;
}

std::vector<std::vector<double>> parse_csv_points(const std::string& text, int expected_cols) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line(text.data() + pos, (eol == std::string::npos ? text.size() : eol) - pos);
    pos = eol == std::string::npos ? text.size() : eol + 1;
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      std::string_view field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size())
        throw ConfigError("malformed CSV value '" + std::string(field) + "' at row " + std::to_string(line_no));
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (expected_cols > 0 && static_cast<int>(row.size()) != expected_cols)
      throw ConfigError("expected " + std::to_string(expected_cols) + " columns at row " +
                        std::to_string(line_no) + ", got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

double effective_timeout(const ExternalModelSpec& spec) {
  if (const char* env = std::getenv("SPARSETRIG_MODEL_TIMEOUT")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return spec.timeout_seconds;
}

void run_command_with_timeout(const std::string& cmdline, double timeout_s) {
  pid_t pid = fork();
  if (pid < 0) throw OracleError("cannot fork model backend");
  if (pid == 0) {
    execl("/bin/sh", "sh", "-c", cmdline.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
  for (;;) {
    int status = 0;
    pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) {
      if (WIFEXITED(status) && WEXITSTATUS(status) == 0) return;
      throw OracleError("model backend failed: '" + cmdline + "'");
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      throw OracleError("model backend timed out after " + std::to_string(timeout_s) + " s");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
}

std::string wait_for_file(const fs::path& path, double timeout_s) {
  auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
  while (!fs::exists(path)) {
    if (std::chrono::steady_clock::now() >= deadline)
      throw OracleError("timed out waiting for response file " + path.string());
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// one request/response exchange; returns raw response rows
std::vector<std::vector<double>> exchange(const ExternalModelSpec& spec,
                                          std::span<const std::vector<double>> points) {
  static int sequence = 0;
  int seq = ++sequence;
  std::string tag = "sparsetrig-" + std::to_string(getpid()) + "-" + std::to_string(seq);
  fs::path dir = spec.command.empty() ? fs::path(spec.exchange_dir) : fs::path(spec.workdir);
  fs::path req = dir / (tag + "-request.csv");
  fs::path resp = dir / (tag + "-response.csv");

  {
    std::ofstream out(req, std::ios::binary);
    if (!out) throw OracleError("cannot write request file " + req.string());
    for (const auto& p : points) out << format_csv_row(p);
  }

  double timeout = effective_timeout(spec);
  std::string text;
  if (!spec.command.empty()) {
    run_command_with_timeout(spec.command + " " + req.string() + " " + resp.string(), timeout);
    if (!fs::exists(resp)) throw OracleError("model backend produced no response file " + resp.string());
    std::ifstream in(resp, std::ios::binary);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    text = wait_for_file(resp, timeout);
  }

  std::vector<std::vector<double>> rows;
  try {
    rows = parse_csv_points(text, 0);
  } catch (const ConfigError& e) {
    // non-numeric rows are handled per point by the caller; re-parse leniently
    rows.clear();
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t eol = text.find('\n', pos);
      std::string_view line(text.data() + pos, (eol == std::string::npos ? text.size() : eol) - pos);
      pos = eol == std::string::npos ? text.size() : eol + 1;
      if (line.empty()) continue;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
      if (ec != std::errc() || ptr != line.data() + line.size())
        rows.push_back({std::numeric_limits<double>::quiet_NaN()});
      else
        rows.push_back({v});
    }
  }

  if (!spec.keep_io) {
    std::error_code ec;
    fs::remove(req, ec);
    fs::remove(resp, ec);
  }

  if (rows.size() != points.size())
    throw OracleError("response row count mismatch: expected " + std::to_string(points.size()) +
                      ", got " + std::to_string(rows.size()));
  for (const auto& r : rows)
    if (r.size() != 1)
      throw OracleError("response rows must hold exactly one value, got " +
                        std::to_string(r.size()));
  return rows;
}

}  // namespace

std::vector<double> external_batch(const ExternalModelSpec& spec,
                                   std::span<const std::vector<double>> points) {
  if (spec.command.empty() == spec.exchange_dir.empty())
    throw ConfigError("external model needs exactly one of command or exchange directory");
  if (points.empty()) return {};

  std::vector<double> values(points.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<std::size_t> open(points.size());
  for (std::size_t i = 0; i < open.size(); ++i) open[i] = i;

  for (int attempt = 0; attempt <= spec.retries && !open.empty(); ++attempt) {
    std::vector<std::size_t> still_failing;
    std::size_t chunk = spec.batch_size == 0 ? open.size() : spec.batch_size;
    for (std::size_t begin = 0; begin < open.size(); begin += chunk) {
      std::size_t end = std::min(open.size(), begin + chunk);
      std::vector<std::vector<double>> pts(end - begin);
      for (std::size_t i = begin; i < end; ++i) pts[i - begin] = points[open[i]];
      auto rows = exchange(spec, pts);
      for (std::size_t i = begin; i < end; ++i) {
        double v = rows[i - begin][0];
        if (std::isfinite(v))
          values[open[i]] = v;
        else
          still_failing.push_back(open[i]);
      }
    }
    open = std::move(still_failing);
  }

  if (!open.empty()) {
    std::string msg = "model evaluation failed after retries at request row " +
                      std::to_string(open.front() + 1);
    std::vector<std::vector<double>> failed;
    for (auto i : open) failed.push_back(points[i]);
    throw OracleError(msg + " (" + std::to_string(open.size()) + " point(s) total)", std::move(failed));
  }
  return values;
}

ExternalModel::ExternalModel(ExternalModelSpec spec) : spec_(std::move(spec)) {
  if (spec_.dim < 1) throw ConfigError("external model dimension must be positive");
  if (static_cast<int>(spec_.domain.size()) != spec_.dim)
    throw ConfigError("external model domain does not match dimension");
}

std::vector<double> ExternalModel::evaluate_unit(std::span<const std::vector<double>> points) {
  std::vector<std::vector<double>> mapped(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    mapped[p].resize(spec_.domain.size());
    for (std::size_t k = 0; k < spec_.domain.size(); ++k)
      mapped[p][k] = spec_.domain[k].lo + (spec_.domain[k].hi - spec_.domain[k].lo) * points[p][k];
  }
  return external_batch(spec_, mapped);
}

std::string ExternalModel::spec() const {
  return "external:" + (spec_.command.empty() ? "dir=" + spec_.exchange_dir : spec_.command);
}

}  // namespace sparsetrig
