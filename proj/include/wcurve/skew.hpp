#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wcurve/bitdyn.hpp"
#include "wcurve/series.hpp"
#include "wcurve/vec2.hpp"

namespace wcurve::skew {

using Vec4 = std::array<double, 4>;

// Base point plus fiber coordinate of the skew products.
struct FiberState {
  bitdyn::BitState base;
  Vec2 y;
};

struct Mat4 {
  std::array<std::array<double, 4>, 4> m{};

  Vec4 operator*(const Vec4& v) const;
  Vec4 diagonal() const { return {m[0][0], m[1][1], m[2][2], m[3][3]}; }
};

// Contracting skew product over the Baker map; the graph of the curve is
// its pullback attractor: fiber -> gamma * fiber + (cos, sin)(2 pi b) with
// b the contracted coordinate after the step.
FiberState attractor_step(const FiberState& st, const series::CurveParams& params);

// Expanding (Anosov) skew product carried by the stable direction:
// fiber -> sqrt(2) * fiber + 2 pi (-sin, cos)(2 pi b).
FiberState anosov_step(const FiberState& st, const series::CurveParams& params);

// Jacobian of the contracting skew product at a base point.  Lower
// triangular; the diagonal carries the multipliers (2, 1/2, gamma, gamma).
Mat4 attractor_jacobian(const bitdyn::BitState& s, const series::CurveParams& params);

// Invariant stable vector (0, 1, S1, S2) with multiplier 1/2.
Vec4 stable_vector(const bitdyn::BitState& s, const series::CurveParams& params,
                   const series::TruncationPolicy& policy);

// Pullback iteration: for each grid point x, runs k forward steps from
// (B^-k(xi, x), y0) with seed-drawn xi, landing on the fiber over x.  The
// sup distance to the curve decays like gamma^k.
std::vector<Vec2> pullback_iterate(std::span<const double> x_grid, int k, Vec2 y0,
                                   const series::CurveParams& params,
                                   const series::TruncationPolicy& policy,
                                   uint64_t seed);

// Empirical marginal of the physical invariant measure: distribution of the
// stable direction over seed-drawn xi at fixed x.
struct SbrSummary {
  double x = 0.0;
  uint64_t n = 0;
  uint64_t seed = 0;
  Vec2 mean;
  Vec2 variance;       // componentwise, unbiased
  double max_norm = 0.0;
  int bins_per_side = 0;
  double box_half_width = 0.0;  // histogram covers [-w, w]^2
  std::vector<uint32_t> histogram;  // row-major bins_per_side^2 counts
};

SbrSummary sbr_sample(double x, uint64_t n, uint64_t seed,
                      const series::CurveParams& params,
                      const series::TruncationPolicy& policy);

// Raw sample values behind sbr_sample, one per index; kept public for the
// serial/parallel equivalence tests.
std::vector<Vec2> sbr_points(double x, uint64_t n, uint64_t seed,
                             const series::CurveParams& params,
                             const series::TruncationPolicy& policy);

}  // namespace wcurve::skew
