#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wcurve {

// Monte Carlo estimate of a Lebesgue-measure quantity.  For plain binomial
// fractions std_error = sqrt(value(1-value)/n); estimates carrying a
// deterministic scale factor (the 2^-N of the tube measures) scale the
// error accordingly.
struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;
  uint64_t n_samples = 0;
  uint64_t seed = 0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

// Ordinary least squares of y against x with the textbook residual-based
// standard error on the slope (zero when fewer than three points).
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Log-log regression summary for dimension and regularity estimates.
struct DimensionEstimate {
  std::vector<int> levels;
  std::vector<double> log_counts;  // base-2 logs of the regressed quantity
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  bool degenerate = false;  // regression impossible (zero increments, ...)
};

}  // namespace wcurve
