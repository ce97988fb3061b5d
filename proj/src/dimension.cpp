#include "wcurve/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wcurve/rng.hpp"

namespace wcurve::dimension {

namespace {

constexpr int kMaxLevel = 14;  // 4^k cells; the set per column stays small

void validate_box_args(int level, int oversample) {
  if (level < 1 || level > kMaxLevel) {
    throw std::domain_error("box level must lie in [1," + std::to_string(kMaxLevel) + "]");
  }
  if (oversample < 1) throw std::domain_error("oversample must be >= 1");
}

}  // namespace

double vertical_offset(const series::CurveParams& params) {
  // Triangle bound: every component is at most 1/(1-gamma) in absolute
  // value, and 4 covers the self-similar case exactly.
  const double bound = 1.0 / (1.0 - params.gamma());
  return std::max(4.0, std::ceil(bound));
}

uint64_t box_count_curve(const Curve& f, int level, int oversample,
                         double vertical_offset) {
  validate_box_args(level, oversample);
  const int64_t columns = int64_t{1} << level;
  const int64_t per_column = (int64_t{1} << level) * oversample;
  const double step = std::exp2(-2 * level) / oversample;
  const double cells = std::exp2(level);

  uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (int64_t col = 0; col < columns; ++col) {
    std::vector<uint64_t> seen;
    seen.reserve(64);
    for (int64_t t = 0; t < per_column; ++t) {
      const double x = static_cast<double>(col * per_column + t) * step;
      const Vec2 w = f(x);
      const auto j1 = static_cast<uint64_t>((w.v1 + vertical_offset) * cells);
      const auto j2 = static_cast<uint64_t>((w.v2 + vertical_offset) * cells);
      seen.push_back((j1 << 32) | j2);
    }
    std::sort(seen.begin(), seen.end());
    total += static_cast<uint64_t>(
        std::unique(seen.begin(), seen.end()) - seen.begin());
  }
  return total;
}

uint64_t box_count(const series::CurveParams& params, int level, int oversample,
                   const series::TruncationPolicy& policy) {
  return box_count_curve(
      [&](double x) { return series::weierstrass(x, params, policy); }, level,
      oversample, vertical_offset(params));
}

DimensionEstimate box_dimension(const series::CurveParams& params, int level_min,
                                int level_max, int oversample,
                                const series::TruncationPolicy& policy) {
  if (level_min < 2 || level_min >= level_max) {
    throw std::domain_error("box levels must satisfy 2 <= level_min < level_max");
  }
  DimensionEstimate est;
  std::vector<double> xs, ys;
  for (int k = level_min; k <= level_max; ++k) {
    const uint64_t c = box_count(params, k, oversample, policy);
    est.levels.push_back(k);
    est.log_counts.push_back(std::log2(static_cast<double>(c)));
    xs.push_back(k);
    ys.push_back(est.log_counts.back());
  }
  const LinearFit f = fit_line(xs, ys);
  est.slope = f.slope;
  est.intercept = f.intercept;
  est.slope_stderr = f.slope_stderr;
  return est;
}

DimensionEstimate holder_estimate_curve(const Curve& f, std::span<const double> scales,
                                        uint64_t n, uint64_t seed) {
  if (scales.size() < 2) throw std::domain_error("need at least two scales");
  if (n < 1) throw std::domain_error("sample count must be >= 1");
  for (double h : scales) {
    if (!(h > 0.0 && h < 1.0)) throw std::domain_error("scales must lie in (0,1)");
  }

  DimensionEstimate est;
  std::vector<double> xs, ys;
  for (size_t si = 0; si < scales.size(); ++si) {
    const double h = scales[si];
    const uint64_t scale_seed = rng::derive(seed, si);
    double max_inc = 0.0;
#pragma omp parallel for schedule(static) reduction(max : max_inc)
    for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) {
      rng::CounterRng g(scale_seed, static_cast<uint64_t>(i));
      const double x = g.next_unit() * (1.0 - h);
      const double inc = (f(x + h) - f(x)).norm();
      max_inc = std::max(max_inc, inc);
    }
    est.levels.push_back(static_cast<int>(std::lround(-std::log2(h))));
    if (max_inc == 0.0) {
      est.degenerate = true;
      est.log_counts.push_back(-std::numeric_limits<double>::infinity());
      continue;
    }
    est.log_counts.push_back(std::log2(max_inc));
    xs.push_back(std::log2(h));
    ys.push_back(std::log2(max_inc));
  }
  if (xs.size() < 2) {
    est.degenerate = true;
    return est;
  }
  const LinearFit f2 = fit_line(xs, ys);
  est.slope = f2.slope;
  est.intercept = f2.intercept;
  est.slope_stderr = f2.slope_stderr;
  return est;
}

DimensionEstimate holder_estimate(const series::CurveParams& params,
                                  std::span<const double> scales, uint64_t n,
                                  uint64_t seed, const series::TruncationPolicy& policy) {
  return holder_estimate_curve(
      [&](double x) { return series::weierstrass(x, params, policy); }, scales, n, seed);
}

double holder_bound(double alpha, int d) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("alpha must lie in (0,1]");
  if (d < 1) throw std::domain_error("d must be >= 1");
  return 1.0 + (1.0 - alpha) * std::min(static_cast<double>(d), 1.0 / alpha);
}

}  // namespace wcurve::dimension
