#include "wcurve/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "wcurve/rng.hpp"

namespace wcurve::scaling {

namespace {

constexpr int kSampledXiDigits = 128;
constexpr uint64_t kOuterTag = 1;
constexpr uint64_t kInnerTag = 2;

void require_depth(const series::TruncationPolicy& policy) {
  if (policy.s_depth() > kSampledXiDigits) {
    throw std::domain_error("sampled xi streams carry 128 digits; eps too small");
  }
}

double binomial_stderr(double value, uint64_t n) {
  return std::sqrt(std::max(value * (1.0 - value), 0.0) / static_cast<double>(n));
}

}  // namespace

std::vector<uint64_t> ar_counts(std::span<const double> ascending_r, uint64_t n,
                                uint64_t seed, const series::TruncationPolicy& policy) {
  require_depth(policy);
  if (n < 1) throw std::domain_error("sample count must be >= 1");
  const size_t R = ascending_r.size();
  std::vector<double> r2(R);
  for (size_t j = 0; j < R; ++j) {
    if (!(ascending_r[j] > 0.0)) throw std::domain_error("radius must be positive");
    if (j > 0 && ascending_r[j] < ascending_r[j - 1]) {
      throw std::domain_error("radii must be ascending");
    }
    r2[j] = ascending_r[j] * ascending_r[j];
  }
  const auto params = series::CurveParams::half();
  std::vector<uint64_t> total(R, 0);

#pragma omp parallel
  {
    std::vector<uint64_t> local(R, 0);
#pragma omp for schedule(static)
    for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) {
      rng::CounterRng g(seed, static_cast<uint64_t>(i));
      const uint64_t words[2] = {g.next_u64(), g.next_u64()};
      const double x = g.next_unit();
      const double y = g.next_unit();
      const double d2 =
          series::bridge_increment(bitdyn::XiView{words, kSampledXiDigits}, x, y,
                                   params, policy)
              .squared_norm();
      for (size_t j = R; j-- > 0;) {
        if (d2 <= r2[j]) {
          ++local[j];
        } else {
          break;  // radii below j fail as well
        }
      }
    }
#pragma omp critical
    for (size_t j = 0; j < R; ++j) total[j] += local[j];
  }
  return total;
}

MeasureEstimate ar_measure(double r, uint64_t n, uint64_t seed,
                           const series::TruncationPolicy& policy) {
  const double rs[1] = {r};
  const auto counts = ar_counts(rs, n, seed, policy);
  const double value = static_cast<double>(counts[0]) / static_cast<double>(n);
  return {value, binomial_stderr(value, n), n, seed};
}

ScalingReport scaling_ratio_suite(double r0, int levels, uint64_t n, uint64_t seed,
                                  const series::TruncationPolicy& policy) {
  if (!(r0 > 0.0)) throw std::domain_error("r0 must be positive");
  if (levels < 0) throw std::domain_error("levels must be >= 0");
  const double g = series::CurveParams::half().gamma();

  ScalingReport rep;
  for (int j = 0; j <= levels; ++j) {
    rep.r_values.push_back(r0 * std::pow(g, j));
  }
  std::vector<double> asc(rep.r_values.rbegin(), rep.r_values.rend());
  const auto counts_asc = ar_counts(asc, n, seed, policy);

  std::vector<uint64_t> counts(counts_asc.rbegin(), counts_asc.rend());
  for (int j = 0; j <= levels; ++j) {
    const double v = static_cast<double>(counts[j]) / static_cast<double>(n);
    rep.estimates.push_back({v, binomial_stderr(v, n), n, seed});
    rep.starved.push_back(counts[j] < 100);
  }
  for (int j = 0; j < levels; ++j) {
    // Nested events on common samples: conditional on the parent count M,
    // the child count is Binomial(M, ratio).
    const uint64_t parent = counts[j];
    const double ratio =
        parent > 0 ? static_cast<double>(counts[j + 1]) / static_cast<double>(parent)
                   : std::numeric_limits<double>::quiet_NaN();
    rep.ratios.push_back(ratio);
    rep.ratio_sigmas.push_back(parent > 0 ? binomial_stderr(ratio, parent) : 0.0);
  }
  return rep;
}

ScalingReport scaling_constants(std::vector<double> r_list, uint64_t n, uint64_t seed,
                                const series::TruncationPolicy& policy) {
  if (r_list.empty()) throw std::domain_error("radius list must not be empty");
  for (double r : r_list) {
    if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("radii must lie in (0,1]");
  }
  std::vector<size_t> order(r_list.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return r_list[a] < r_list[b]; });
  std::vector<double> asc(r_list.size());
  for (size_t j = 0; j < order.size(); ++j) asc[j] = r_list[order[j]];

  const auto counts_asc = ar_counts(asc, n, seed, policy);

  ScalingReport rep;
  rep.r_values = r_list;
  rep.estimates.resize(r_list.size());
  rep.starved.resize(r_list.size());
  for (size_t j = 0; j < order.size(); ++j) {
    const double v = static_cast<double>(counts_asc[j]) / static_cast<double>(n);
    rep.estimates[order[j]] = {v, binomial_stderr(v, n), n, seed};
    rep.starved[order[j]] = counts_asc[j] < 100;
  }

  rep.c_hat = std::numeric_limits<double>::infinity();
  rep.C_hat = 0.0;
  std::vector<double> lx, ly;
  for (size_t j = 0; j < r_list.size(); ++j) {
    const double r = r_list[j];
    const double v = rep.estimates[j].value;
    rep.c_hat = std::min(rep.c_hat, v / (r * r));
    rep.C_hat = std::max(rep.C_hat, v / (r * r));
    if (v > 0.0) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(v));
    }
  }
  if (lx.size() >= 2) {
    const LinearFit f = fit_line(lx, ly);
    rep.slope = f.slope;
    rep.slope_stderr = f.slope_stderr;
  } else {
    rep.slope = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

std::vector<double> marstrand_inner_fractions(double r, uint64_t m_outer,
                                              uint64_t m_inner, uint64_t seed,
                                              const series::TruncationPolicy& policy) {
  require_depth(policy);
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("r must lie in (0,1)");
  if (m_outer < 1 || m_inner < 1) throw std::domain_error("sample counts must be >= 1");
  const auto params = series::CurveParams::half();
  const uint64_t outer_seed = rng::derive(seed, kOuterTag);
  const uint64_t inner_seed = rng::derive(seed, kInnerTag);
  const double r2 = r * r;

  std::vector<double> fractions(m_outer);
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < static_cast<int64_t>(m_outer); ++i) {
    rng::CounterRng go(outer_seed, static_cast<uint64_t>(i));
    const uint64_t words[2] = {go.next_u64(), go.next_u64()};
    const bitdyn::XiView xi{words, kSampledXiDigits};
    const double x = go.next_unit();
    const Vec2 href = series::bridge(xi, x, params, policy);
    uint64_t cnt = 0;
    for (uint64_t j = 0; j < m_inner; ++j) {
      rng::CounterRng gi(inner_seed, static_cast<uint64_t>(i) * m_inner + j);
      const double y = gi.next_unit();
      const Vec2 d = series::bridge(xi, y, params, policy) - href;
      if (d.squared_norm() <= r2) ++cnt;
    }
    fractions[static_cast<size_t>(i)] =
        static_cast<double>(cnt) / static_cast<double>(m_inner);
  }
  return fractions;
}

std::vector<MarstrandCheck> marstrand_multi(double eta, std::span<const double> rs,
                                            uint64_t m_outer, uint64_t m_inner,
                                            uint64_t seed,
                                            const series::TruncationPolicy& policy) {
  require_depth(policy);
  if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("eta must lie in (0,1)");
  if (m_outer < 1 || m_inner < 1) throw std::domain_error("sample counts must be >= 1");
  const size_t R = rs.size();
  std::vector<double> r2(R);
  for (size_t j = 0; j < R; ++j) {
    if (!(rs[j] > 0.0 && rs[j] < 1.0)) throw std::domain_error("r must lie in (0,1)");
    if (j > 0 && rs[j] < rs[j - 1]) throw std::domain_error("radii must be ascending");
    r2[j] = rs[j] * rs[j];
  }
  const auto params = series::CurveParams::half();
  const uint64_t outer_seed = rng::derive(seed, kOuterTag);
  const uint64_t inner_seed = rng::derive(seed, kInnerTag);

  std::vector<uint64_t> hits(R, 0);
#pragma omp parallel
  {
    std::vector<uint64_t> local(R, 0);
    std::vector<uint64_t> inner(R, 0);
#pragma omp for schedule(static)
    for (int64_t i = 0; i < static_cast<int64_t>(m_outer); ++i) {
      rng::CounterRng go(outer_seed, static_cast<uint64_t>(i));
      const uint64_t words[2] = {go.next_u64(), go.next_u64()};
      const bitdyn::XiView xi{words, kSampledXiDigits};
      const double x = go.next_unit();
      const Vec2 href = series::bridge(xi, x, params, policy);
      std::fill(inner.begin(), inner.end(), 0);
      for (uint64_t j = 0; j < m_inner; ++j) {
        rng::CounterRng gi(inner_seed, static_cast<uint64_t>(i) * m_inner + j);
        const double y = gi.next_unit();
        const double d2 = (series::bridge(xi, y, params, policy) - href).squared_norm();
        for (size_t k = R; k-- > 0;) {
          if (d2 <= r2[k]) {
            ++inner[k];
          } else {
            break;
          }
        }
      }
      for (size_t k = 0; k < R; ++k) {
        const double fraction =
            static_cast<double>(inner[k]) / static_cast<double>(m_inner);
        if (fraction >= std::pow(rs[k], 2.0 - eta)) ++local[k];
      }
    }
#pragma omp critical
    for (size_t k = 0; k < R; ++k) hits[k] += local[k];
  }

  std::vector<MarstrandCheck> out(R);
  for (size_t k = 0; k < R; ++k) {
    MarstrandCheck& c = out[k];
    c.eta = eta;
    c.r = rs[k];
    c.threshold = std::pow(rs[k], 2.0 - eta);
    const double v = static_cast<double>(hits[k]) / static_cast<double>(m_outer);
    c.estimate = {v, binomial_stderr(v, m_outer), m_outer, seed};
    c.inner_starved = c.threshold * static_cast<double>(m_inner) < 10.0;
  }
  return out;
}

MarstrandCheck marstrand_check(double eta, double r, uint64_t m_outer, uint64_t m_inner,
                               uint64_t seed, const series::TruncationPolicy& policy) {
  const double rs[1] = {r};
  return marstrand_multi(eta, rs, m_outer, m_inner, seed, policy)[0];
}

}  // namespace wcurve::scaling
