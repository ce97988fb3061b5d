#pragma once

#include <cstdint>

#include "wcurve/bitdyn.hpp"
#include "wcurve/estimates.hpp"
#include "wcurve/series.hpp"
#include "wcurve/vec2.hpp"

namespace wcurve::fibers {

// Tube neighborhood of the stable fiber through the graph point over the
// base state: base coordinates (xi, x), dyadic level N (the x window is the
// dyadic interval of length 2^-N containing x) and vertical width K 2^-N.
struct FiberTube {
  bitdyn::BitState base;
  int level = 1;
  double width = 1.0;
};

// Point on the stable fiber through (x, w): w + integral of the stable
// direction from x to v.
Vec2 fiber_point(const bitdyn::BitState& s, Vec2 w, double v,
                 const series::CurveParams& params,
                 const series::TruncationPolicy& policy);

// Vertical distance at y between the stable fibers through the graph
// points over x and y, computed through the curve and the fiber integral.
// Equals the bridge increment H(xi,y) - H(xi,x).
Vec2 vertical_distance(const bitdyn::BitState& s, double x, double y,
                       const series::CurveParams& params,
                       const series::TruncationPolicy& policy);

// Hit counts behind the two tube-measure estimators; public for the
// serial/parallel equivalence tests.
uint64_t tube_direct_count(const FiberTube& tube, uint64_t n, uint64_t seed,
                           const series::CurveParams& params,
                           const series::TruncationPolicy& policy);
uint64_t tube_scaled_count(const FiberTube& tube, uint64_t n, uint64_t seed,
                           const series::CurveParams& params,
                           const series::TruncationPolicy& policy);

// Mass of the graph measure on the tube, sampled directly: 2^-N times the
// fraction of v in the dyadic window whose curve point stays within
// K 2^-N of the fiber.
MeasureEstimate tube_measure_direct(const FiberTube& tube, uint64_t n, uint64_t seed,
                                    const series::CurveParams& params,
                                    const series::TruncationPolicy& policy);

// Same mass through the scaling route: walk the base N steps backward
// (exactly, on the digit window) and measure the bridge-increment ball of
// radius K gamma^N at unit scale.
MeasureEstimate tube_measure_scaled(const FiberTube& tube, uint64_t n, uint64_t seed,
                                    const series::CurveParams& params,
                                    const series::TruncationPolicy& policy);

// Local dimension of the graph measure at the base point: regression of
// log m(V_N) on log 2^-N over N in [level_min, level_max], via the scaled
// route.  total.slope decomposes exactly as 1 + lambda_slope.
struct LocalDimension {
  DimensionEstimate total;
  double lambda_slope = 0.0;
  double lambda_stderr = 0.0;
  std::vector<uint8_t> starved;  // per level: fewer than 10 hits
};

LocalDimension local_dimension(const bitdyn::BitState& s, int level_min, int level_max,
                               double width, uint64_t n, uint64_t seed,
                               const series::CurveParams& params,
                               const series::TruncationPolicy& policy);

}  // namespace wcurve::fibers
