#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wcurve/dimension.hpp"
#include "wcurve/fibers.hpp"
#include "wcurve/scaling.hpp"
#include "wcurve/skew.hpp"

namespace wcurve::reference {

// Serial reference implementations of the parallel Monte Carlo and
// counting kernels.  Plain loops over the same per-index sample streams;
// the parallel kernels must reproduce them bit for bit at any thread
// count.  Kept for the equivalence tests and the kernel benchmark.

std::vector<uint64_t> ar_counts(std::span<const double> ascending_r, uint64_t n,
                                uint64_t seed, const series::TruncationPolicy& policy);

uint64_t tube_direct_count(const fibers::FiberTube& tube, uint64_t n, uint64_t seed,
                           const series::CurveParams& params,
                           const series::TruncationPolicy& policy);

uint64_t tube_scaled_count(const fibers::FiberTube& tube, uint64_t n, uint64_t seed,
                           const series::CurveParams& params,
                           const series::TruncationPolicy& policy);

std::vector<Vec2> sbr_points(double x, uint64_t n, uint64_t seed,
                             const series::CurveParams& params,
                             const series::TruncationPolicy& policy);

uint64_t box_count(const series::CurveParams& params, int level, int oversample,
                   const series::TruncationPolicy& policy);

}  // namespace wcurve::reference
