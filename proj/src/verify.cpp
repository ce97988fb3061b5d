#include "wcurve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wcurve/rng.hpp"
#include "wcurve/skew.hpp"

namespace wcurve::verify {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double norm4(const skew::Vec4& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

}  // namespace

double IdentityResiduals::max() const {
  return std::max({attractor, s_cocycle, h_cocycle, bridge, stable_invariance});
}

bitdyn::BitState random_state(uint64_t seed, uint64_t index, int digits_per_side) {
  rng::CounterRng g(rng::derive(seed, 0xB175), index);
  const int words = (digits_per_side + 63) / 64;
  std::vector<uint8_t> xi(static_cast<size_t>(digits_per_side));
  std::vector<uint8_t> x(static_cast<size_t>(digits_per_side));
  for (auto* side : {&xi, &x}) {
    for (int w = 0; w < words; ++w) {
      const uint64_t bits = g.next_u64();
      for (int b = 0; b < 64; ++b) {
        const int pos = 64 * w + b;
        if (pos < digits_per_side) (*side)[static_cast<size_t>(pos)] = (bits >> (63 - b)) & 1u;
      }
    }
  }
  return bitdyn::BitState::from_digits(xi, x);
}

IdentityResiduals identity_suite(uint64_t seed, int count,
                                 const series::CurveParams& params,
                                 const series::TruncationPolicy& policy) {
  const double g = params.gamma();
  double r_attractor = 0.0, r_scocycle = 0.0, r_hcocycle = 0.0, r_bridge = 0.0,
         r_stable = 0.0;

#pragma omp parallel for schedule(static) reduction(max : r_attractor, r_scocycle, \
        r_hcocycle, r_bridge, r_stable)
  for (int64_t i = 0; i < count; ++i) {
    const bitdyn::BitState s = random_state(seed, static_cast<uint64_t>(i));
    const bitdyn::BitState next = bitdyn::baker(s);
    const double a = kTwoPi * next.x_fraction(0);

    const Vec2 w0 = series::weierstrass(s, params, policy);
    const Vec2 w1 = series::weierstrass(next, params, policy);
    r_attractor =
        std::max(r_attractor, (w1 - Vec2{std::cos(a), std::sin(a)} - g * w0).norm());

    const Vec2 s0 = series::stable_direction(s, params, policy);
    const Vec2 s1 = series::stable_direction(next, params, policy);
    r_scocycle = std::max(
        r_scocycle,
        (s1 - std::numbers::sqrt2 * s0 - kTwoPi * Vec2{-std::sin(a), std::cos(a)}).norm());

    const Vec2 h0 = series::bridge(s, params, policy);
    const Vec2 h1 = series::bridge(next, params, policy);
    r_hcocycle = std::max(r_hcocycle, (h1 - g * h0).norm());

    rng::CounterRng r(rng::derive(seed, 0xAB), static_cast<uint64_t>(i));
    const double x = r.next_unit();
    const double y = r.next_unit();
    const auto words = s.xi_words();
    const bitdyn::XiView xi{words.data(), s.xi_count()};
    const Vec2 lhs = series::bridge_increment(xi, x, y, params, policy);
    const Vec2 rhs = series::weierstrass(y, params, policy) -
                     series::weierstrass(x, params, policy) -
                     series::stable_integral(xi, x, y, params, policy);
    r_bridge = std::max(r_bridge, (lhs - rhs).norm());

    const skew::Mat4 jac = skew::attractor_jacobian(s, params);
    const skew::Vec4 xv = skew::stable_vector(s, params, policy);
    const skew::Vec4 xv1 = skew::stable_vector(next, params, policy);
    skew::Vec4 d = jac * xv;
    for (int c = 0; c < 4; ++c) d[c] -= 0.5 * xv1[c];
    r_stable = std::max(r_stable, norm4(d));
  }

  return {r_attractor, r_scocycle, r_hcocycle, r_bridge, r_stable};
}

}  // namespace wcurve::verify
