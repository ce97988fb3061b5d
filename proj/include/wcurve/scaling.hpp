#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wcurve/estimates.hpp"
#include "wcurve/series.hpp"

namespace wcurve::scaling {

struct ScalingReport {
  std::vector<double> r_values;
  std::vector<MeasureEstimate> estimates;
  std::vector<double> ratios;        // estimate at gamma*r over estimate at r
  std::vector<double> ratio_sigmas;  // conditional binomial, common samples
  std::vector<uint8_t> starved;      // per radius: observed count < 100
  double c_hat = 0.0;                // min over r of value / r^2
  double C_hat = 0.0;                // max over r of value / r^2
  double slope = 0.0;                // log value vs log r
  double slope_stderr = 0.0;
};

// Hit counts of { |H(xi,y) - H(xi,x)| <= r } for every radius in
// ascending_r over a single common sample stream; one triple (xi, x, y) is
// drawn per index from (seed, index).  Shared samples make the counts
// nested, so monotonicity in r is deterministic.
std::vector<uint64_t> ar_counts(std::span<const double> ascending_r, uint64_t n,
                                uint64_t seed, const series::TruncationPolicy& policy);

// Lebesgue volume of the increment ball A_r estimated as a binomial
// fraction of n uniform triples.
MeasureEstimate ar_measure(double r, uint64_t n, uint64_t seed,
                           const series::TruncationPolicy& policy);

// Estimates at r0, gamma r0, ..., gamma^levels r0 plus consecutive ratios;
// the exact scaling law forces every ratio to 1/2.
ScalingReport scaling_ratio_suite(double r0, int levels, uint64_t n, uint64_t seed,
                                  const series::TruncationPolicy& policy);

// Estimates over an arbitrary radius list plus the empirical two-sided
// r^2 constants and the log-log regression slope.
ScalingReport scaling_constants(std::vector<double> r_list, uint64_t n, uint64_t seed,
                                const series::TruncationPolicy& policy);

struct MarstrandCheck {
  double eta = 0.0;
  double r = 0.0;
  double threshold = 0.0;  // r^(2-eta)
  MeasureEstimate estimate;
  bool inner_starved = false;  // threshold * m_inner < 10
};

// Nested Monte Carlo estimate of the projection-type tail
//   lambda^2 { (xi,x) : lambda{ y : |H(xi,y)-H(xi,x)| <= r } >= r^(2-eta) }.
MarstrandCheck marstrand_check(double eta, double r, uint64_t m_outer, uint64_t m_inner,
                               uint64_t seed, const series::TruncationPolicy& policy);

// Same estimate for several radii sharing the outer points and inner
// streams (one pass over the samples).
std::vector<MarstrandCheck> marstrand_multi(double eta, std::span<const double> rs,
                                            uint64_t m_outer, uint64_t m_inner,
                                            uint64_t seed,
                                            const series::TruncationPolicy& policy);

// Inner fractions lambda-hat{ y : |H(xi_i, y) - H(xi_i, x_i)| <= r } per
// outer draw; the Markov-inequality consistency tests read these directly.
std::vector<double> marstrand_inner_fractions(double r, uint64_t m_outer,
                                              uint64_t m_inner, uint64_t seed,
                                              const series::TruncationPolicy& policy);

}  // namespace wcurve::scaling
