#include "wcurve/skew.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wcurve/rng.hpp"

namespace wcurve::skew {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSampledXiDigits = 128;

void require_half(const series::CurveParams& params, const char* op) {
  if (!params.is_half()) {
    throw std::invalid_argument(std::string(op) + " is only defined at alpha = 1/2");
  }
}

// Contracted coordinate entering the forcing terms; read from the digit
// window so that step, Jacobian and series evaluations share arguments
// bit for bit.
double forced_coordinate(const bitdyn::BitState& s) { return s.x_fraction(0); }

}  // namespace

Vec4 Mat4::operator*(const Vec4& v) const {
  Vec4 r{};
  for (int i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += m[i][j] * v[j];
    r[i] = acc;
  }
  return r;
}

FiberState attractor_step(const FiberState& st, const series::CurveParams& params) {
  require_half(params, "attractor_step");
  bitdyn::BitState next = bitdyn::baker(st.base);
  const double a = kTwoPi * forced_coordinate(next);
  const double g = params.gamma();
  return {std::move(next), g * st.y + Vec2{std::cos(a), std::sin(a)}};
}

FiberState anosov_step(const FiberState& st, const series::CurveParams& params) {
  require_half(params, "anosov_step");
  bitdyn::BitState next = bitdyn::baker(st.base);
  const double a = kTwoPi * forced_coordinate(next);
  return {std::move(next),
          std::numbers::sqrt2 * st.y + kTwoPi * Vec2{-std::sin(a), std::cos(a)}};
}

Mat4 attractor_jacobian(const bitdyn::BitState& s, const series::CurveParams& params) {
  require_half(params, "attractor_jacobian");
  const double a = kTwoPi * forced_coordinate(bitdyn::baker(s));
  const double g = params.gamma();
  Mat4 j;
  j.m[0][0] = 2.0;
  j.m[1][1] = 0.5;
  j.m[2][2] = g;
  j.m[3][3] = g;
  j.m[2][1] = -std::numbers::pi * std::sin(a);
  j.m[3][1] = std::numbers::pi * std::cos(a);
  return j;
}

Vec4 stable_vector(const bitdyn::BitState& s, const series::CurveParams& params,
                   const series::TruncationPolicy& policy) {
  const Vec2 sd = series::stable_direction(s, params, policy);
  return {0.0, 1.0, sd.v1, sd.v2};
}

std::vector<Vec2> pullback_iterate(std::span<const double> x_grid, int k, Vec2 y0,
                                   const series::CurveParams& params,
                                   const series::TruncationPolicy& policy,
                                   uint64_t seed) {
  require_half(params, "pullback_iterate");
  if (k < 1) throw std::domain_error("iteration count k must be >= 1");
  (void)policy;
  for (double x : x_grid) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::domain_error("grid points must lie in [0,1]");
    }
  }
  std::vector<Vec2> out(x_grid.size());
  const int64_t count = static_cast<int64_t>(x_grid.size());
#pragma omp parallel for schedule(static)
  for (int64_t g = 0; g < count; ++g) {
    const double x = x_grid[static_cast<size_t>(g)];
    rng::CounterRng r(seed, static_cast<uint64_t>(g));
    std::vector<uint8_t> xi_digits(64);
    const uint64_t w = r.next_u64();
    for (int b = 0; b < 64; ++b) xi_digits[static_cast<size_t>(b)] = (w >> (63 - b)) & 1u;

    std::vector<uint8_t> x_digits(static_cast<size_t>(64 + k), 0);
    double u = x;
    for (auto& d : x_digits) {
      u *= 2.0;
      if (u >= 1.0) {
        d = 1;
        u -= 1.0;
      }
    }
    FiberState st{bitdyn::baker_iter(bitdyn::BitState::from_digits(xi_digits, x_digits), -k),
                  y0};
    for (int j = 0; j < k; ++j) st = attractor_step(st, params);
    out[static_cast<size_t>(g)] = st.y;
  }
  return out;
}

std::vector<Vec2> sbr_points(double x, uint64_t n, uint64_t seed,
                             const series::CurveParams& params,
                             const series::TruncationPolicy& policy) {
  require_half(params, "sbr_points");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("x must lie in [0,1]");
  if (policy.s_depth() > kSampledXiDigits) {
    throw std::domain_error("sampled xi streams carry 128 digits; eps too small");
  }
  std::vector<Vec2> pts(n);
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) {
    rng::CounterRng r(seed, static_cast<uint64_t>(i));
    const uint64_t words[2] = {r.next_u64(), r.next_u64()};
    pts[static_cast<size_t>(i)] =
        series::stable_direction(bitdyn::XiView{words, kSampledXiDigits}, x, params, policy);
  }
  return pts;
}

SbrSummary sbr_sample(double x, uint64_t n, uint64_t seed,
                      const series::CurveParams& params,
                      const series::TruncationPolicy& policy) {
  if (n < 1) throw std::domain_error("sample count must be >= 1");
  const auto pts = sbr_points(x, n, seed, params, policy);

  SbrSummary s;
  s.x = x;
  s.n = n;
  s.seed = seed;
  s.bins_per_side = 200;
  s.box_half_width = 16.0;
  s.histogram.assign(static_cast<size_t>(s.bins_per_side) * s.bins_per_side, 0);

  // Serial reduction over the materialized samples keeps every accumulated
  // quantity independent of the thread count used above.
  long double m1 = 0.0L, m2 = 0.0L;
  for (const Vec2& p : pts) {
    m1 += p.v1;
    m2 += p.v2;
    s.max_norm = std::max(s.max_norm, p.norm());
    const double scale = s.bins_per_side / (2.0 * s.box_half_width);
    int b1 = static_cast<int>((p.v1 + s.box_half_width) * scale);
    int b2 = static_cast<int>((p.v2 + s.box_half_width) * scale);
    b1 = std::clamp(b1, 0, s.bins_per_side - 1);
    b2 = std::clamp(b2, 0, s.bins_per_side - 1);
    ++s.histogram[static_cast<size_t>(b1) * s.bins_per_side + b2];
  }
  s.mean = {static_cast<double>(m1 / n), static_cast<double>(m2 / n)};

  long double v1 = 0.0L, v2 = 0.0L;
  for (const Vec2& p : pts) {
    v1 += (p.v1 - s.mean.v1) * (p.v1 - s.mean.v1);
    v2 += (p.v2 - s.mean.v2) * (p.v2 - s.mean.v2);
  }
  const uint64_t dof = n > 1 ? n - 1 : 1;
  s.variance = {static_cast<double>(v1 / dof), static_cast<double>(v2 / dof)};
  return s;
}

}  // namespace wcurve::skew
