#include "wcurve/fibers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wcurve/rng.hpp"

namespace wcurve::fibers {

namespace {

void validate_tube(const FiberTube& tube, const series::TruncationPolicy& policy) {
  if (tube.level < 0) throw std::domain_error("tube level must be >= 0");
  if (!(tube.width > 0.0)) throw std::domain_error("tube width must be positive");
  if (!(tube.width * std::exp2(-tube.level) > 10.0 * policy.eps)) {
    throw std::domain_error("tube is below the precision floor (K 2^-N <= 10 eps)");
  }
}

// Base state with enough digits on both sides to walk `level` steps
// backward and still feed the expanding-side series.
bitdyn::BitState widened(const bitdyn::BitState& s, int level,
                         const series::TruncationPolicy& policy) {
  if (s.x_count() >= level && s.xi_count() + level >= policy.s_depth()) return s;
  const int half = std::max(2 * level + 64, policy.s_depth() + level);
  return bitdyn::encode(bitdyn::decode(s), half);
}

}  // namespace

Vec2 fiber_point(const bitdyn::BitState& s, Vec2 w, double v,
                 const series::CurveParams& params,
                 const series::TruncationPolicy& policy) {
  return w + series::stable_integral(s, s.x_value(), v, params, policy);
}

Vec2 vertical_distance(const bitdyn::BitState& s, double x, double y,
                       const series::CurveParams& params,
                       const series::TruncationPolicy& policy) {
  return series::weierstrass(y, params, policy) - series::weierstrass(x, params, policy) -
         series::stable_integral(s, x, y, params, policy);
}

uint64_t tube_direct_count(const FiberTube& tube, uint64_t n, uint64_t seed,
                           const series::CurveParams& params,
                           const series::TruncationPolicy& policy) {
  validate_tube(tube, policy);
  if (n < 1) throw std::domain_error("sample count must be >= 1");
  const double x = tube.base.x_value();
  const double cell = std::exp2(-tube.level);
  // Dyadic window containing x; x = 1 wraps to the last window (the base
  // interval is a circle).
  const double lo = std::min(std::floor(x / cell), std::exp2(tube.level) - 1.0) * cell;

  const auto words = tube.base.xi_words();
  const bitdyn::XiView xi{words.data(), tube.base.xi_count()};
  const Vec2 wref = series::weierstrass(x, params, policy);
  const double t = tube.width * cell;
  const double t2 = t * t;

  uint64_t hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits)
  for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) {
    rng::CounterRng g(seed, static_cast<uint64_t>(i));
    const double v = lo + g.next_unit() * cell;
    const Vec2 d = series::weierstrass(v, params, policy) - wref -
                   series::stable_integral(xi, x, v, params, policy);
    if (d.squared_norm() <= t2) ++hits;
  }
  return hits;
}

uint64_t tube_scaled_count(const FiberTube& tube, uint64_t n, uint64_t seed,
                           const series::CurveParams& params,
                           const series::TruncationPolicy& policy) {
  validate_tube(tube, policy);
  if (n < 1) throw std::domain_error("sample count must be >= 1");
  const bitdyn::BitState past =
      bitdyn::baker_iter(widened(tube.base, tube.level, policy), -tube.level);
  const double xref = past.x_value();
  const auto words = past.xi_words();
  const bitdyn::XiView xi{words.data(), past.xi_count()};
  const Vec2 href = series::bridge(xi, xref, params, policy);
  const double t = tube.width * std::pow(params.gamma(), tube.level);
  const double t2 = t * t;

  uint64_t hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits)
  for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) {
    rng::CounterRng g(seed, static_cast<uint64_t>(i));
    const double u = g.next_unit();
    const Vec2 d = series::bridge(xi, u, params, policy) - href;
    if (d.squared_norm() <= t2) ++hits;
  }
  return hits;
}

namespace {

MeasureEstimate scaled_fraction(uint64_t hits, uint64_t n, uint64_t seed, int level) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  const double scale = std::exp2(-level);
  const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
  return {scale * p, scale * se, n, seed};
}

}  // namespace

MeasureEstimate tube_measure_direct(const FiberTube& tube, uint64_t n, uint64_t seed,
                                    const series::CurveParams& params,
                                    const series::TruncationPolicy& policy) {
  return scaled_fraction(tube_direct_count(tube, n, seed, params, policy), n, seed,
                         tube.level);
}

MeasureEstimate tube_measure_scaled(const FiberTube& tube, uint64_t n, uint64_t seed,
                                    const series::CurveParams& params,
                                    const series::TruncationPolicy& policy) {
  return scaled_fraction(tube_scaled_count(tube, n, seed, params, policy), n, seed,
                         tube.level);
}

LocalDimension local_dimension(const bitdyn::BitState& s, int level_min, int level_max,
                               double width, uint64_t n, uint64_t seed,
                               const series::CurveParams& params,
                               const series::TruncationPolicy& policy) {
  if (level_min < 2 || level_min > level_max) {
    throw std::domain_error("levels must satisfy 2 <= level_min <= level_max");
  }

  LocalDimension ld;
  std::vector<double> xs, ys;  // -N and log2 of the window fraction
  for (int N = level_min; N <= level_max; ++N) {
    const FiberTube tube{s, N, width};
    const uint64_t hits = tube_scaled_count(tube, n, rng::derive(seed, N), params, policy);
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    ld.starved.push_back(hits < 10);
    ld.total.levels.push_back(N);
    ld.total.log_counts.push_back(hits > 0
                                      ? -N + std::log2(p)
                                      : -std::numeric_limits<double>::infinity());
    if (hits > 0) {
      xs.push_back(-N);
      ys.push_back(std::log2(p));
    }
  }

  if (xs.size() < 2) {
    ld.total.degenerate = true;
    return ld;
  }
  // Fit the window-fraction term; the full slope is 1 + lambda term since
  // log2 m(V_N) = -N + log2 p_N and the abscissa is -N.
  const LinearFit f = fit_line(xs, ys);
  ld.lambda_slope = f.slope;
  ld.lambda_stderr = f.slope_stderr;
  ld.total.slope = 1.0 + f.slope;
  ld.total.intercept = f.intercept;
  ld.total.slope_stderr = f.slope_stderr;
  return ld;
}

}  // namespace wcurve::fibers
