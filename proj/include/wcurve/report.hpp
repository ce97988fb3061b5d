#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wcurve/series.hpp"

namespace wcurve::report {

enum class Format { json, csv };

struct Verdict {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  std::string criterion;  // human-readable bound the value was checked against
};

struct Report {
  std::string command;
  nlohmann::ordered_json config;
  nlohmann::ordered_json results;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, double>> timings;  // seconds, wall clock

  bool all_passed() const;
};

// Canonical serialization.  Identical config and seed give byte-identical
// output at any thread count; wall-clock timings are therefore only
// included on request and never belong in files meant to be compared.
std::string emit_report(const Report& r, Format fmt, bool include_timings = false);

// ----- command drivers (shared by the CLI and the acceptance suite) -----

struct EvalConfig {
  double x = 0.25;
  double alpha = 0.5;
  double eps = 1e-12;
};
Report run_eval(const EvalConfig& cfg);

struct RenderConfig {
  uint64_t n = 1024;
  double alpha = 0.5;
  double eps = 1e-12;
};
// Rows (x, W1(x), W2(x)) at equispaced x including both endpoints.
std::string render_rows(const RenderConfig& cfg, Format fmt);

struct VerifyConfig {
  uint64_t seed = 7;
  int count = 10000;
  double tol = 1e-8;
  double eps = 1e-12;
};
Report run_verify(const VerifyConfig& cfg);

struct ScalingConfig {
  double r0 = 0.5;
  int levels = 4;
  std::vector<double> r_list;  // nonempty selects the constants suite
  uint64_t n = 1000000;
  uint64_t seed = 42;
  double eps = 1e-12;
};
Report run_scaling(const ScalingConfig& cfg);

struct MarstrandConfig {
  double eta = 0.5;
  std::vector<double> r_list = {0.125, 0.0625, 0.03125};
  uint64_t m_outer = 10000;
  uint64_t m_inner = 10000;
  uint64_t seed = 11;
  uint64_t chat_n = 1000000;  // samples behind the C_hat constant
  double eps = 1e-12;
};
Report run_marstrand(const MarstrandConfig& cfg);

struct LocalDimConfig {
  int points = 1;
  int level_min = 2;
  int level_max = 10;
  double width = 1.0;
  uint64_t n = 100000;
  uint64_t seed = 3;
  double eps = 1e-12;
};
Report run_localdim(const LocalDimConfig& cfg);

struct BoxDimConfig {
  double alpha = 0.5;
  int level_min = 4;
  int level_max = 11;
  int oversample = 4;
  double eps = 1e-12;
};
Report run_boxdim(const BoxDimConfig& cfg);

struct HolderConfig {
  double alpha = 0.5;
  int j_min = 4;
  int j_max = 16;
  uint64_t n = 10000;
  uint64_t seed = 5;
  double eps = 1e-12;
};
Report run_holder(const HolderConfig& cfg);

struct SbrConfig {
  std::vector<double> xs = {0.3};
  uint64_t n = 100000;
  uint64_t seed = 9;
  double eps = 1e-12;
};
Report run_sbr(const SbrConfig& cfg);

}  // namespace wcurve::report
