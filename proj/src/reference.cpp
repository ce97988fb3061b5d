#include "wcurve/reference.hpp"

#include <algorithm>
#include <cmath>

#include "wcurve/rng.hpp"

namespace wcurve::reference {

namespace {
constexpr int kSampledXiDigits = 128;
}

std::vector<uint64_t> ar_counts(std::span<const double> ascending_r, uint64_t n,
                                uint64_t seed, const series::TruncationPolicy& policy) {
  const auto params = series::CurveParams::half();
  std::vector<uint64_t> counts(ascending_r.size(), 0);
  for (uint64_t i = 0; i < n; ++i) {
    rng::CounterRng g(seed, i);
    const uint64_t words[2] = {g.next_u64(), g.next_u64()};
    const double x = g.next_unit();
    const double y = g.next_unit();
    const double d2 =
        series::bridge_increment(bitdyn::XiView{words, kSampledXiDigits}, x, y, params,
                                 policy)
            .squared_norm();
    for (size_t j = ascending_r.size(); j-- > 0;) {
      if (d2 <= ascending_r[j] * ascending_r[j]) {
        ++counts[j];
      } else {
        break;
      }
    }
  }
  return counts;
}

uint64_t tube_direct_count(const fibers::FiberTube& tube, uint64_t n, uint64_t seed,
                           const series::CurveParams& params,
                           const series::TruncationPolicy& policy) {
  const double x = tube.base.x_value();
  const double cell = std::exp2(-tube.level);
  const double lo = std::min(std::floor(x / cell), std::exp2(tube.level) - 1.0) * cell;
  const auto words = tube.base.xi_words();
  const bitdyn::XiView xi{words.data(), tube.base.xi_count()};
  const Vec2 wref = series::weierstrass(x, params, policy);
  const double t = tube.width * cell;

  uint64_t hits = 0;
  for (uint64_t i = 0; i < n; ++i) {
    rng::CounterRng g(seed, i);
    const double v = lo + g.next_unit() * cell;
    const Vec2 d = series::weierstrass(v, params, policy) - wref -
                   series::stable_integral(xi, x, v, params, policy);
    if (d.squared_norm() <= t * t) ++hits;
  }
  return hits;
}

uint64_t tube_scaled_count(const fibers::FiberTube& tube, uint64_t n, uint64_t seed,
                           const series::CurveParams& params,
                           const series::TruncationPolicy& policy) {
  const bitdyn::BitState past = bitdyn::baker_iter(tube.base, -tube.level);
  const double xref = past.x_value();
  const auto words = past.xi_words();
  const bitdyn::XiView xi{words.data(), past.xi_count()};
  const Vec2 href = series::bridge(xi, xref, params, policy);
  const double t = tube.width * std::pow(params.gamma(), tube.level);

  uint64_t hits = 0;
  for (uint64_t i = 0; i < n; ++i) {
    rng::CounterRng g(seed, i);
    const Vec2 d = series::bridge(xi, g.next_unit(), params, policy) - href;
    if (d.squared_norm() <= t * t) ++hits;
  }
  return hits;
}

std::vector<Vec2> sbr_points(double x, uint64_t n, uint64_t seed,
                             const series::CurveParams& params,
                             const series::TruncationPolicy& policy) {
  std::vector<Vec2> pts(n);
  for (uint64_t i = 0; i < n; ++i) {
    rng::CounterRng g(seed, i);
    const uint64_t words[2] = {g.next_u64(), g.next_u64()};
    pts[i] = series::stable_direction(bitdyn::XiView{words, kSampledXiDigits}, x,
                                      params, policy);
  }
  return pts;
}

uint64_t box_count(const series::CurveParams& params, int level, int oversample,
                   const series::TruncationPolicy& policy) {
  const double offset = dimension::vertical_offset(params);
  const int64_t columns = int64_t{1} << level;
  const int64_t per_column = (int64_t{1} << level) * oversample;
  const double step = std::exp2(-2 * level) / oversample;
  const double cells = std::exp2(level);

  uint64_t total = 0;
  std::vector<uint64_t> seen;
  for (int64_t col = 0; col < columns; ++col) {
    seen.clear();
    for (int64_t t = 0; t < per_column; ++t) {
      const double x = static_cast<double>(col * per_column + t) * step;
      const Vec2 w = series::weierstrass(x, params, policy);
      const auto j1 = static_cast<uint64_t>((w.v1 + offset) * cells);
      const auto j2 = static_cast<uint64_t>((w.v2 + offset) * cells);
      seen.push_back((j1 << 32) | j2);
    }
    std::sort(seen.begin(), seen.end());
    total += static_cast<uint64_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
  }
  return total;
}

}  // namespace wcurve::reference
