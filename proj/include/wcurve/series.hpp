#pragma once

#include <complex>

#include "wcurve/bitdyn.hpp"
#include "wcurve/vec2.hpp"

namespace wcurve::series {

// Family parameter: term n of the curve carries amplitude gamma^n = 2^(-alpha n).
// alpha = 1/2 is the self-similar setting required by every dynamical
// identity; other alphas are admitted only by the plain curve evaluators.
struct CurveParams {
  double alpha = 0.5;

  double gamma() const { return std::exp2(-alpha); }
  bool is_half() const { return alpha == 0.5; }
  static CurveParams half() { return {0.5}; }
};

// Term counts with certified geometric tail bounds.
//   tail_w(n)     = gamma^(n+1) / (1-gamma)           (curve series)
//   tail_h_neg(k) = 2 pi 2^(-(k+1)/2) / (1-2^(-1/2))  (expanding-side chain)
struct TruncationPolicy {
  int n_max = 0;
  int k_max = 0;
  double eps = 0.0;

  // Smallest counts whose tails fall below eps.
  static TruncationPolicy for_eps(double eps, const CurveParams& params = CurveParams::half());

  static double tail_w(int n, const CurveParams& params);
  static double tail_h_neg(int k);

  // Depth used by the expanding-side chains (stable direction, its
  // integral, the negative half of the bridge).  Shared so that the chain
  // identities cancel term by term.
  int s_depth() const { return k_max; }
};

// The two-dimensional Weierstrass-type curve W(x) = sum gamma^n (cos, sin)(2 pi 2^n x).
Vec2 weierstrass(double x, const CurveParams& params, const TruncationPolicy& policy);

// Same curve evaluated at the exact dyadic point carried by a bit window;
// arguments are reduced mod 1 on the digit level.
Vec2 weierstrass(const bitdyn::BitState& s, const CurveParams& params,
                 const TruncationPolicy& policy);

// Lacunary power series sum gamma^n z^(2^n) on the open unit disk; its
// boundary values reproduce the curve components.
std::complex<double> lacunary(std::complex<double> z, const CurveParams& params,
                              const TruncationPolicy& policy);

// Fiber part of the invariant stable vector field,
//   S(xi, x) = -2 pi sum_{n>=1} gamma^n (-sin, cos)(2 pi b_n),
// where b_n is the contracted coordinate after n forward Baker steps.
Vec2 stable_direction(const bitdyn::BitState& s, const CurveParams& params,
                      const TruncationPolicy& policy);
Vec2 stable_direction(const bitdyn::XiView& xi, double x, const CurveParams& params,
                      const TruncationPolicy& policy);

// Bridge map H: doubly infinite series whose increments in the second
// argument equal vertical distances between stable fibers.  Satisfies the
// exact cocycle H(B(xi,x)) = gamma H(xi,x).
Vec2 bridge(const bitdyn::BitState& s, const CurveParams& params,
            const TruncationPolicy& policy);
Vec2 bridge(const bitdyn::XiView& xi, double x, const CurveParams& params,
            const TruncationPolicy& policy);

// H(xi, y) - H(xi, x) in fused form.  The expanding-side terms are
// evaluated through angle-difference products, which keeps full relative
// accuracy where the plain difference of the two bridge values would lose
// 2^(k/2)-amplified rounding noise.
Vec2 bridge_increment(const bitdyn::XiView& xi, double x, double y,
                      const CurveParams& params, const TruncationPolicy& policy);

// Integral of the stable direction over [a,b] in the second argument,
// summed term by term in closed form (each Baker coordinate is affine in
// x, so every term has an exact antiderivative).
Vec2 stable_integral(const bitdyn::BitState& s, double a, double b,
                     const CurveParams& params, const TruncationPolicy& policy);
Vec2 stable_integral(const bitdyn::XiView& xi, double a, double b,
                     const CurveParams& params, const TruncationPolicy& policy);

}  // namespace wcurve::series
