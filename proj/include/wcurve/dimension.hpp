#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "wcurve/estimates.hpp"
#include "wcurve/series.hpp"
#include "wcurve/vec2.hpp"

namespace wcurve::dimension {

using Curve = std::function<Vec2(double)>;

// Number of occupied cells of the 2^-k grid covering the graph
// {(x, f(x))} in R^3.  The parameter is sampled at 2^(2k) * oversample
// equispaced points (the 1/2-Hoelder modulus makes increments over one
// step comparable to a fraction of the cell side); occupied (column, cell)
// indices are deduplicated per column.  vertical_offset shifts values into
// nonnegative cell indices.
uint64_t box_count_curve(const Curve& f, int level, int oversample,
                         double vertical_offset);

uint64_t box_count(const series::CurveParams& params, int level, int oversample,
                   const series::TruncationPolicy& policy);

// Least-squares slope of log2 N(2^-k) against k.
DimensionEstimate box_dimension(const series::CurveParams& params, int level_min,
                                int level_max, int oversample,
                                const series::TruncationPolicy& policy);

// Hoelder exponent from the max-increment modulus: slope of
// log max_x |f(x+h) - f(x)| against log h over the given dyadic steps.
DimensionEstimate holder_estimate_curve(const Curve& f, std::span<const double> scales,
                                        uint64_t n, uint64_t seed);

DimensionEstimate holder_estimate(const series::CurveParams& params,
                                  std::span<const double> scales, uint64_t n,
                                  uint64_t seed, const series::TruncationPolicy& policy);

// Closed-form graph-dimension bound for an alpha-Hoelder map into R^d:
// 1 + (1 - alpha) min(d, 1/alpha).
double holder_bound(double alpha, int d);

// Cell-index offset used for the curve family: large enough that every
// component value is shifted into [0, 2 * offset).
double vertical_offset(const series::CurveParams& params);

}  // namespace wcurve::dimension
