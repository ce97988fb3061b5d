#include "wcurve/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wcurve::series {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_half(const CurveParams& params, const char* op) {
  if (!params.is_half()) {
    throw std::invalid_argument(std::string(op) +
                                " is only defined at alpha = 1/2 (gamma = 2^-1/2)");
  }
}

void require_xi_depth(int have, int need, const char* op) {
  if (have < need) {
    throw bitdyn::WindowExhausted(std::string(op) + " needs " + std::to_string(need) +
                                  " xi digits, window holds " + std::to_string(have));
  }
}

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0,1]");
  }
}

// 2u mod 1 for dyadic u in [0,1); both steps are exact in binary floating
// point, so iterating shifts digits out without rounding.
inline double double_mod1(double u) {
  u *= 2.0;
  return u >= 1.0 ? u - 1.0 : u;
}

}  // namespace

double TruncationPolicy::tail_w(int n, const CurveParams& params) {
  const double g = params.gamma();
  return std::pow(g, n + 1) / (1.0 - g);
}

double TruncationPolicy::tail_h_neg(int k) {
  return kTwoPi * std::exp2(-0.5 * (k + 1)) / (1.0 - std::exp2(-0.5));
}

TruncationPolicy TruncationPolicy::for_eps(double eps, const CurveParams& params) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
  if (!(params.alpha > 0.0 && params.alpha <= 1.0)) {
    throw std::domain_error("alpha must lie in (0,1]");
  }
  TruncationPolicy p;
  p.eps = eps;
  while (tail_w(p.n_max, params) > eps) {
    if (++p.n_max > 1 << 20) throw std::domain_error("truncation depth diverges");
  }
  while (tail_h_neg(p.k_max) > eps) {
    if (++p.k_max > 1 << 20) throw std::domain_error("truncation depth diverges");
  }
  return p;
}

Vec2 weierstrass(double x, const CurveParams& params, const TruncationPolicy& policy) {
  require_unit(x, "x");
  const double g = params.gamma();
  Vec2 acc;
  double w = 1.0;
  double u = x;
  for (int n = 0; n <= policy.n_max; ++n) {
    const double a = kTwoPi * u;
    acc += w * Vec2{std::cos(a), std::sin(a)};
    w *= g;
    u = double_mod1(u);
  }
  return acc;
}

Vec2 weierstrass(const bitdyn::BitState& s, const CurveParams& params,
                 const TruncationPolicy& policy) {
  const double g = params.gamma();
  Vec2 acc;
  double w = 1.0;
  for (int n = 0; n <= policy.n_max; ++n) {
    const double a = kTwoPi * s.x_fraction(n);
    acc += w * Vec2{std::cos(a), std::sin(a)};
    w *= g;
  }
  return acc;
}

std::complex<double> lacunary(std::complex<double> z, const CurveParams& params,
                              const TruncationPolicy& policy) {
  if (!(std::abs(z) < 1.0)) throw std::domain_error("|z| must be < 1");
  std::complex<double> acc = 0.0;
  std::complex<double> zp = z;
  double w = 1.0;
  for (int n = 0; n <= policy.n_max; ++n) {
    acc += w * zp;
    w *= params.gamma();
    zp *= zp;
  }
  return acc;
}

Vec2 stable_direction(const bitdyn::XiView& xi, double x, const CurveParams& params,
                      const TruncationPolicy& policy) {
  require_half(params, "stable_direction");
  require_xi_depth(xi.count, policy.s_depth(), "stable_direction");
  const double g = params.gamma();
  Vec2 acc;
  double w = 1.0;
  double b = x;
  for (int n = 1; n <= policy.s_depth(); ++n) {
    b = 0.5 * (xi.bit(n - 1) + b);
    w *= g;
    const double a = kTwoPi * b;
    acc += w * Vec2{-std::sin(a), std::cos(a)};
  }
  return -kTwoPi * acc;
}

Vec2 stable_direction(const bitdyn::BitState& s, const CurveParams& params,
                      const TruncationPolicy& policy) {
  const auto words = s.xi_words();
  return stable_direction(bitdyn::XiView{words.data(), s.xi_count()}, s.x_value(),
                          params, policy);
}

Vec2 bridge(const bitdyn::BitState& s, const CurveParams& params,
            const TruncationPolicy& policy) {
  require_half(params, "bridge");
  require_xi_depth(s.xi_count(), policy.s_depth(), "bridge");
  const double g = params.gamma();
  Vec2 acc;

  // Contracted side: with u_n = 2^n x mod 1 read off the digit window,
  //   gamma^n [(cos,sin)(2 pi u_n) - (1,0)]
  //     = gamma^n (-2 sin^2(pi u_n), sin(2 pi u_n)).
  double w = 1.0;
  for (int n = 0; n <= policy.n_max; ++n) {
    const double u = s.x_fraction(n);
    const double sh = std::sin(kPi * u);
    acc += w * Vec2{-2.0 * sh * sh, std::sin(kTwoPi * u)};
    w *= g;
  }

  // Expanding side, increments relative to x = 0 in product form: the
  // 2^(k/2) weight amplifies rounding of a plain cos/sin difference, the
  // half-angle product does not.
  const double x = s.x_value();
  double c = 0.0;
  double winv = 1.0;
  double p2 = 1.0;
  for (int k = 1; k <= policy.s_depth(); ++k) {
    c = 0.5 * (s.xi_digit(k - 1) + c);
    winv *= kSqrt2;
    p2 *= 0.5;
    const double delta = kPi * x * p2;
    const double mid = kTwoPi * (c + 0.5 * x * p2);
    const double t = winv * 2.0 * std::sin(delta);
    acc += t * Vec2{-std::sin(mid), std::cos(mid)};
  }
  return acc;
}

Vec2 bridge(const bitdyn::XiView& xi, double x, const CurveParams& params,
            const TruncationPolicy& policy) {
  require_half(params, "bridge");
  require_xi_depth(xi.count, policy.s_depth(), "bridge");
  require_unit(x, "x");
  const double g = params.gamma();
  Vec2 acc;

  double w = 1.0;
  double u = x;
  for (int n = 0; n <= policy.n_max; ++n) {
    const double sh = std::sin(kPi * u);
    acc += w * Vec2{-2.0 * sh * sh, std::sin(kTwoPi * u)};
    w *= g;
    u = double_mod1(u);
  }

  double c = 0.0;
  double winv = 1.0;
  double p2 = 1.0;
  for (int k = 1; k <= policy.s_depth(); ++k) {
    c = 0.5 * (xi.bit(k - 1) + c);
    winv *= kSqrt2;
    p2 *= 0.5;
    const double delta = kPi * x * p2;
    const double mid = kTwoPi * (c + 0.5 * x * p2);
    const double t = winv * 2.0 * std::sin(delta);
    acc += t * Vec2{-std::sin(mid), std::cos(mid)};
  }
  return acc;
}

Vec2 bridge_increment(const bitdyn::XiView& xi, double x, double y,
                      const CurveParams& params, const TruncationPolicy& policy) {
  require_half(params, "bridge_increment");
  require_xi_depth(xi.count, policy.s_depth(), "bridge_increment");
  require_unit(x, "x");
  require_unit(y, "y");
  const double g = params.gamma();
  Vec2 acc;

  double w = 1.0;
  double u = x;
  double v = y;
  for (int n = 0; n <= policy.n_max; ++n) {
    const double au = kTwoPi * u;
    const double av = kTwoPi * v;
    acc += w * Vec2{std::cos(av) - std::cos(au), std::sin(av) - std::sin(au)};
    w *= g;
    u = double_mod1(u);
    v = double_mod1(v);
  }

  const double diff = y - x;
  const double sum = y + x;
  double c = 0.0;
  double winv = 1.0;
  double p2 = 1.0;
  for (int k = 1; k <= policy.s_depth(); ++k) {
    c = 0.5 * (xi.bit(k - 1) + c);
    winv *= kSqrt2;
    p2 *= 0.5;
    const double delta = kPi * diff * p2;
    const double mid = kTwoPi * (c + 0.5 * sum * p2);
    const double t = winv * 2.0 * std::sin(delta);
    acc += t * Vec2{-std::sin(mid), std::cos(mid)};
  }
  return acc;
}

Vec2 stable_integral(const bitdyn::XiView& xi, double a, double b,
                     const CurveParams& params, const TruncationPolicy& policy) {
  require_half(params, "stable_integral");
  require_xi_depth(xi.count, policy.s_depth(), "stable_integral");
  require_unit(a, "a");
  require_unit(b, "b");
  Vec2 acc;
  const double diff = b - a;
  const double sum = b + a;
  double c = 0.0;
  double winv = 1.0;
  double p2 = 1.0;
  for (int n = 1; n <= policy.s_depth(); ++n) {
    c = 0.5 * (xi.bit(n - 1) + c);
    winv *= kSqrt2;
    p2 *= 0.5;
    const double delta = kPi * diff * p2;
    const double mid = kTwoPi * (c + 0.5 * sum * p2);
    const double t = winv * 2.0 * std::sin(delta);
    acc += t * Vec2{std::sin(mid), -std::cos(mid)};
  }
  return acc;
}

Vec2 stable_integral(const bitdyn::BitState& s, double a, double b,
                     const CurveParams& params, const TruncationPolicy& policy) {
  const auto words = s.xi_words();
  return stable_integral(bitdyn::XiView{words.data(), s.xi_count()}, a, b, params, policy);
}

}  // namespace wcurve::series
