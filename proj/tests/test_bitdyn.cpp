#include <doctest.h>

#include <cmath>
#include <vector>

#include "wcurve/bitdyn.hpp"
#include "wcurve/rng.hpp"
#include "wcurve/verify.hpp"

using namespace wcurve;
using bitdyn::BitState;
using bitdyn::PhasePoint;

namespace {

std::vector<uint8_t> xi_prefix(const BitState& s, int n) {
  std::vector<uint8_t> out;
  for (int i = 0; i < n; ++i) out.push_back(static_cast<uint8_t>(s.xi_digit(i)));
  return out;
}

std::vector<uint8_t> x_prefix(const BitState& s, int n) {
  std::vector<uint8_t> out;
  for (int m = 1; m <= n; ++m) out.push_back(static_cast<uint8_t>(s.x_digit(m)));
  return out;
}

}  // namespace

TEST_CASE("encode produces truncated expansions") {
  const BitState s = bitdyn::encode({0.25, 0.5}, 4);
  CHECK(xi_prefix(s, 4) == std::vector<uint8_t>{0, 1, 0, 0});
  CHECK(x_prefix(s, 4) == std::vector<uint8_t>{1, 0, 0, 0});

  const BitState t = bitdyn::encode({0.75, 0.75}, 3);
  CHECK(xi_prefix(t, 3) == std::vector<uint8_t>{1, 1, 0});
  CHECK(x_prefix(t, 3) == std::vector<uint8_t>{1, 1, 0});

  const BitState z = bitdyn::encode({0.0, 0.0}, 6);
  CHECK(xi_prefix(z, 6) == std::vector<uint8_t>(6, 0));
  CHECK(x_prefix(z, 6) == std::vector<uint8_t>(6, 0));

  // 1 has only the all-ones expansion
  const BitState one = bitdyn::encode({1.0, 1.0}, 5);
  CHECK(xi_prefix(one, 5) == std::vector<uint8_t>(5, 1));
  CHECK(x_prefix(one, 5) == std::vector<uint8_t>(5, 1));
}

TEST_CASE("nonterminating encoding ends dyadic rationals in ones") {
  const BitState s = bitdyn::encode_nonterminating({0.25, 0.5}, 4);
  CHECK(xi_prefix(s, 4) == std::vector<uint8_t>{0, 0, 1, 1});
  CHECK(x_prefix(s, 4) == std::vector<uint8_t>{0, 1, 1, 1});

  const BitState t = bitdyn::encode_nonterminating({0.75, 0.75}, 3);
  CHECK(x_prefix(t, 3) == std::vector<uint8_t>{1, 0, 1});  // 0.1011... cut to 3

  // zero still encodes as zeros; non-dyadic values are untouched
  const BitState z = bitdyn::encode_nonterminating({0.0, 1.0 / 3.0}, 4);
  CHECK(xi_prefix(z, 4) == std::vector<uint8_t>(4, 0));
  CHECK(x_prefix(z, 4) == std::vector<uint8_t>{0, 1, 0, 1});
}

TEST_CASE("decode round-trips dyadic points exactly") {
  CHECK(bitdyn::decode(BitState::from_digits({1}, {1})).xi == 0.5);
  CHECK(bitdyn::decode(BitState::from_digits({1}, {1})).x == 0.5);

  const PhasePoint pts[] = {{0.0, 0.0},          {0.25, 0.5},   {1.0, 1.0},
                            {0x1.0p-20, 0.75},   {0.625, 1e-9}, {0.123456789, 0.5},
                            {5.0 / 7.0, 1.0 / 3.0}};
  for (const auto& p : pts) {
    const PhasePoint q = bitdyn::decode(bitdyn::encode(p, 64));
    // 64 digits hold any double in [0, 1] with value >= 2^-11 exactly;
    // smaller values truncate at the window floor
    if (p.xi >= 0x1.0p-11 || p.xi == 0.0) CHECK(q.xi == doctest::Approx(p.xi).epsilon(1e-15));
    if (p.x >= 0x1.0p-11 || p.x == 0.0) CHECK(q.x == doctest::Approx(p.x).epsilon(1e-15));
  }

  // exact round trip for 53-bit dyadics, including tiny ones
  rng::CounterRng g(5, 0);
  for (int i = 0; i < 200; ++i) {
    const double a = g.next_unit();
    const double b = g.next_unit() * 0x1.0p-9;
    const PhasePoint q = bitdyn::decode(bitdyn::encode({a, b}, 64));
    CHECK(q.xi == a);
    CHECK(q.x == b);
  }
}

TEST_CASE("baker moves one digit across the cursor") {
  SUBCASE("xi0 = 0") {
    const auto s = bitdyn::baker(bitdyn::encode({0.25, 0.5}, 64));
    const auto p = bitdyn::decode(s);
    CHECK(p.xi == 0.5);
    CHECK(p.x == 0.25);
  }
  SUBCASE("xi0 = 1") {
    const auto s = bitdyn::baker(bitdyn::encode({0.75, 0.5}, 64));
    const auto p = bitdyn::decode(s);
    CHECK(p.xi == 0.5);
    CHECK(p.x == 0.75);
  }
  SUBCASE("origin is a fixed point") {
    const auto s = bitdyn::baker(bitdyn::encode({0.0, 0.0}, 64));
    const auto p = bitdyn::decode(s);
    CHECK(p.xi == 0.0);
    CHECK(p.x == 0.0);
  }
}

TEST_CASE("baker iterates match the closed forms") {
  SUBCASE("one step backward") {
    const auto s = bitdyn::baker_iter(bitdyn::encode({0.5, 0.75}, 64), -1);
    const auto p = bitdyn::decode(s);
    CHECK(p.xi == 0.75);
    CHECK(p.x == 0.5);
  }
  SUBCASE("two steps forward") {
    // (1/4, 0) has xi digits (0,1), so two steps give (4 xi mod 1, 1/2)
    const auto s = bitdyn::baker_iter(bitdyn::encode({0.25, 0.0}, 64), 2);
    const auto p = bitdyn::decode(s);
    CHECK(p.xi == 0.0);
    CHECK(p.x == 0.5);
    // cross-check: two single steps
    const auto t = bitdyn::baker(bitdyn::baker(bitdyn::encode({0.25, 0.0}, 64)));
    CHECK(t == s);
  }
  SUBCASE("zero steps") {
    const auto s = bitdyn::encode({0.3, 0.7}, 16);
    CHECK(bitdyn::baker_iter(s, 0) == s);
  }
}

TEST_CASE("forward and backward iterates invert bit for bit") {
  for (uint64_t i = 0; i < 50; ++i) {
    const auto s = verify::random_state(99, i, 96);
    for (int k : {1, 5, 31, 96, -1, -17, -96}) {
      CHECK(bitdyn::baker_iter(bitdyn::baker_iter(s, k), -k) == s);
    }
  }
}

TEST_CASE("conjugacy with the arithmetic formulas on dyadic points") {
  rng::CounterRng g(17, 3);
  for (int i = 0; i < 300; ++i) {
    // 40-digit dyadics survive several exact halvings in double arithmetic
    const double xi = std::floor(g.next_unit() * 0x1.0p40) * 0x1.0p-40;
    const double x = std::floor(g.next_unit() * 0x1.0p40) * 0x1.0p-40;
    const auto s = bitdyn::encode({xi, x}, 64);
    const auto p = bitdyn::decode(bitdyn::baker(s));
    const double xi0 = std::floor(2.0 * xi);  // leading digit
    CHECK(p.xi == 2.0 * xi - xi0);
    CHECK(p.x == (xi0 + x) / 2.0);
  }
}

TEST_CASE("baker images of uniform points stay uniform (chi-square, 16x16)") {
  const int n = 1000000;
  const int side = 16;
  std::vector<int> counts(side * side, 0);
  for (int i = 0; i < n; ++i) {
    rng::CounterRng g(2024, static_cast<uint64_t>(i));
    const auto p = bitdyn::decode(bitdyn::baker(bitdyn::encode({g.next_unit(), g.next_unit()}, 64)));
    const int b1 = std::min(static_cast<int>(p.xi * side), side - 1);
    const int b2 = std::min(static_cast<int>(p.x * side), side - 1);
    ++counts[b1 * side + b2];
  }
  const double expected = static_cast<double>(n) / (side * side);
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // Wilson-Hilferty 99th percentile for 255 dof
  const int dof = side * side - 1;
  const double t = 2.0 / (9.0 * dof);
  const double crit = dof * std::pow(1.0 - t + 2.3263478740408408 * std::sqrt(t), 3.0);
  CHECK(chi2 < crit);
}

TEST_CASE("window and domain errors") {
  CHECK_THROWS_AS((void)bitdyn::encode({-0.1, 0.5}, 8), std::domain_error);
  CHECK_THROWS_AS((void)bitdyn::encode({0.5, 1.5}, 8), std::domain_error);

  auto s = bitdyn::encode({0.5, 0.5}, 4);
  CHECK_THROWS_AS((void)bitdyn::baker_iter(s, 5), bitdyn::WindowExhausted);
  CHECK_THROWS_AS((void)bitdyn::baker_iter(s, -5), bitdyn::WindowExhausted);
  s = bitdyn::baker_iter(s, 4);
  CHECK(s.cursor() == 0);
  CHECK_THROWS_AS((void)bitdyn::baker(s), bitdyn::WindowExhausted);
}

TEST_CASE("x window extraction equals exact doubling") {
  rng::CounterRng g(31, 9);
  for (int i = 0; i < 50; ++i) {
    const double x = g.next_unit();
    const auto s = bitdyn::encode({0.0, x}, 64);
    double u = x;
    for (int n = 0; n < 64; ++n) {
      CHECK(s.x_fraction(n) == u);
      u *= 2.0;
      if (u >= 1.0) u -= 1.0;
    }
  }
}

TEST_CASE("with_x swaps the contracting side only") {
  const auto s = verify::random_state(7, 0, 96);
  const auto t = s.with_x(0.375);
  CHECK(t.x_value() == 0.375);
  CHECK(t.xi_count() == s.xi_count());
  for (int n = 0; n < s.xi_count(); ++n) CHECK(t.xi_digit(n) == s.xi_digit(n));
}
