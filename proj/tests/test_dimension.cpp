#include <doctest.h>

#include <cmath>
#include <vector>

#include "wcurve/dimension.hpp"

using namespace wcurve;
using series::CurveParams;
using series::TruncationPolicy;

namespace {
const CurveParams kHalf = CurveParams::half();
const TruncationPolicy kPolicy = TruncationPolicy::for_eps(1e-12, kHalf);

uint64_t dense_box_oracle(int level, double step) {
  // brute-force occupancy count at a fixed fine parameter step
  std::vector<uint64_t> seen;
  const double cells = std::exp2(level);
  const double offset = dimension::vertical_offset(kHalf);
  for (double x = 0.0; x < 1.0; x += step) {
    const Vec2 w = series::weierstrass(x, kHalf, kPolicy);
    const auto i = static_cast<uint64_t>(x * cells);
    const auto j1 = static_cast<uint64_t>((w.v1 + offset) * cells);
    const auto j2 = static_cast<uint64_t>((w.v2 + offset) * cells);
    seen.push_back((i << 42) | (j1 << 21) | j2);
  }
  std::sort(seen.begin(), seen.end());
  return static_cast<uint64_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

}  // namespace

TEST_CASE("box counts are reproducible and bracketed by a dense oracle") {
  const uint64_t c1 = dimension::box_count(kHalf, 1, 4, kPolicy);
  const uint64_t c2 = dimension::box_count(kHalf, 1, 4, kPolicy);
  CHECK(c1 == c2);
  CHECK(c1 >= 2);

  const uint64_t oracle = dense_box_oracle(1, 1e-6);
  CHECK(c1 <= oracle);
  // the 16-point sweep at level 1 already sees most cells
  CHECK(c1 * 2 >= oracle);
}

TEST_CASE("box counts grow monotonically and at most eightfold per level") {
  uint64_t prev = dimension::box_count(kHalf, 2, 4, kPolicy);
  for (int k = 3; k <= 8; ++k) {
    const uint64_t c = dimension::box_count(kHalf, k, 4, kPolicy);
    CHECK(c >= prev);
    CHECK(c <= 8 * prev);
    prev = c;
  }
}

TEST_CASE("doubling the oversample barely moves the counts") {
  for (int k = 4; k <= 10; k += 2) {
    const auto a = static_cast<double>(dimension::box_count(kHalf, k, 4, kPolicy));
    const auto b = static_cast<double>(dimension::box_count(kHalf, k, 8, kPolicy));
    CHECK(std::abs(b - a) / b < 0.02);
  }
}

TEST_CASE("a straight line counts as one-dimensional") {
  const auto line = [](double x) { return Vec2{x, x}; };
  uint64_t prev = 0;
  for (int k = 3; k <= 9; ++k) {
    const uint64_t c = dimension::box_count_curve(line, k, 4, 0.0);
    if (prev > 0) {
      CHECK(c >= 2 * prev - 4);  // Theta(2^k) growth
      CHECK(c <= 2 * prev + 4);
    }
    prev = c;
  }

  DimensionEstimate est;
  std::vector<double> xs, ys;
  for (int k = 3; k <= 9; ++k) {
    xs.push_back(k);
    ys.push_back(std::log2(static_cast<double>(dimension::box_count_curve(line, k, 4, 0.0))));
  }
  const auto f = fit_line(xs, ys);
  CHECK(f.slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("box dimension of the self-similar curve at reduced depth") {
  const auto est = dimension::box_dimension(kHalf, 4, 9, 4, kPolicy);
  CHECK(est.slope > 1.8);
  CHECK(est.slope < 2.1);
  CHECK(est.levels.size() == 6);
}

TEST_CASE("hoelder exponent from max increments") {
  std::vector<double> scales;
  for (int j = 4; j <= 16; ++j) scales.push_back(std::exp2(-j));

  const auto est = dimension::holder_estimate(kHalf, scales, 10000, 5, kPolicy);
  CHECK_FALSE(est.degenerate);
  CHECK(est.slope == doctest::Approx(0.5).epsilon(0.1));
  CHECK(std::abs(est.slope - 0.5) <= 0.05);

  const CurveParams a3{0.3};
  const auto p3 = TruncationPolicy::for_eps(1e-12, a3);
  const auto est3 = dimension::holder_estimate(a3, scales, 10000, 5, p3);
  CHECK(std::abs(est3.slope - 0.3) <= 0.05);
}

TEST_CASE("constant curves flag the estimator as degenerate") {
  const auto zero = [](double) { return Vec2{0.0, 0.0}; };
  const std::vector<double> scales = {0.25, 0.125, 0.0625};
  const auto est = dimension::holder_estimate_curve(zero, scales, 100, 1);
  CHECK(est.degenerate);
}

TEST_CASE("hoelder graph-dimension bound") {
  CHECK(dimension::holder_bound(0.5, 2) == 2.0);
  CHECK(dimension::holder_bound(1.0, 2) == 1.0);
  CHECK(dimension::holder_bound(1.0 / 3.0, 2) == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)dimension::holder_bound(0.0, 2), std::domain_error);
  CHECK_THROWS_AS((void)dimension::holder_bound(0.5, 0), std::domain_error);
}
