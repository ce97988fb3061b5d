#include <doctest.h>

#include <cmath>
#include <numeric>

#include "wcurve/scaling.hpp"

using namespace wcurve;
using series::CurveParams;
using series::TruncationPolicy;

namespace {
const TruncationPolicy kPolicy = TruncationPolicy::for_eps(1e-12, CurveParams::half());
}

TEST_CASE("increment ball measure at extreme radii") {
  // every increment is far below 100 in norm
  const auto full = scaling::ar_measure(100.0, 2000, 1, kPolicy);
  CHECK(full.value == 1.0);
  CHECK(full.std_error == 0.0);

  // and almost surely above 1e-15
  const auto none = scaling::ar_measure(1e-15, 20000, 1, kPolicy);
  CHECK(none.value == 0.0);

  CHECK_THROWS_AS((void)scaling::ar_measure(-0.5, 100, 1, kPolicy), std::domain_error);
}

TEST_CASE("binomial error halves when the sample count quadruples") {
  const auto a = scaling::ar_measure(0.25, 40000, 7, kPolicy);
  const auto b = scaling::ar_measure(0.25, 160000, 7, kPolicy);
  CHECK(a.std_error > 0.0);
  const double shrink = a.std_error / b.std_error;
  CHECK(shrink > 1.6);  // ideal factor 2 within binomial noise
  CHECK(shrink < 2.4);
}

TEST_CASE("nested counts are monotone in r on common samples") {
  const std::vector<double> rs = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
  const auto counts = scaling::ar_counts(rs, 50000, 11, kPolicy);
  for (size_t j = 1; j < counts.size(); ++j) CHECK(counts[j - 1] <= counts[j]);
}

TEST_CASE("measure of the increment ball halves at each gamma step") {
  const auto rep = scaling::scaling_ratio_suite(0.5, 4, 200000, 42, kPolicy);
  REQUIRE(rep.ratios.size() == 4);
  REQUIRE(rep.estimates.size() == 5);
  for (size_t j = 0; j < rep.ratios.size(); ++j) {
    CHECK_FALSE(rep.starved[j]);
    CHECK(std::abs(rep.ratios[j] - 0.5) <= 3.0 * rep.ratio_sigmas[j]);
  }

  const auto single = scaling::scaling_ratio_suite(0.5, 0, 1000, 3, kPolicy);
  CHECK(single.estimates.size() == 1);
  CHECK(single.ratios.empty());
}

TEST_CASE("volume exponent and two-sided constants") {
  const double g = std::exp2(-0.5);
  std::vector<double> rs;
  for (int j = 0; j < 7; ++j) rs.push_back(0.5 * std::pow(g, j));
  const auto rep = scaling::scaling_constants(rs, 400000, 21, kPolicy);
  CHECK(rep.c_hat > 0.0);
  CHECK(rep.C_hat >= rep.c_hat);
  CHECK(rep.slope == doctest::Approx(2.0).epsilon(0.15));

  // value/r^2 ratios hug a common constant across the ladder
  for (size_t j = 0; j < rs.size(); ++j) {
    const double c = rep.estimates[j].value / (rs[j] * rs[j]);
    CHECK(c >= rep.c_hat);
    CHECK(c <= rep.C_hat);
  }
}

TEST_CASE("projection tail estimate obeys the Markov bound deterministically") {
  const double r = 0.0625;
  const uint64_t m_outer = 400, m_inner = 400;
  const auto fractions = scaling::marstrand_inner_fractions(r, m_outer, m_inner, 17, kPolicy);
  REQUIRE(fractions.size() == m_outer);

  const double pooled =
      std::accumulate(fractions.begin(), fractions.end(), 0.0) / m_outer;
  for (double eta : {0.3, 0.5, 0.8}) {
    const double t = std::pow(r, 2.0 - eta);
    double outer = 0.0;
    for (double f : fractions) outer += (f >= t) ? 1.0 : 0.0;
    outer /= m_outer;
    CHECK(outer <= pooled / t + 1e-12);
  }
}

TEST_CASE("projection tail estimate matches its multi-radius variant") {
  const std::vector<double> rs = {0.03125, 0.125};
  const auto multi = scaling::marstrand_multi(0.5, rs, 300, 300, 23, kPolicy);
  REQUIRE(multi.size() == 2);
  for (size_t k = 0; k < rs.size(); ++k) {
    const auto single = scaling::marstrand_check(0.5, rs[k], 300, 300, 23, kPolicy);
    CHECK(single.estimate.value == multi[k].estimate.value);
    CHECK(single.threshold == multi[k].threshold);
  }
  CHECK_THROWS_AS((void)scaling::marstrand_check(1.5, 0.1, 10, 10, 1, kPolicy),
                  std::domain_error);
  CHECK_THROWS_AS((void)scaling::marstrand_check(0.5, 1.2, 10, 10, 1, kPolicy),
                  std::domain_error);
}

TEST_CASE("inner starvation is flagged") {
  // threshold r^(2-eta) = 2^-6 at eta=0.5, r=2^-4; 100 inner samples -> ~1.6 expected
  const auto c = scaling::marstrand_check(0.5, 0.0625, 50, 100, 29, kPolicy);
  CHECK(c.inner_starved);
  const auto ok = scaling::marstrand_check(0.5, 0.0625, 50, 2000, 29, kPolicy);
  CHECK_FALSE(ok.inner_starved);
}
