#include "wcurve/bitdyn.hpp"

#include <algorithm>
#include <cmath>

namespace wcurve::bitdyn {

namespace {

// Truncated binary expansion of v in [0,1].  Doubling a double and
// subtracting 1 from a value in [1,2) are exact, so the loop peels off
// digits without rounding; v = 1 yields all ones (its only expansion).
std::vector<uint8_t> expand(double v, int digits) {
  std::vector<uint8_t> out(static_cast<size_t>(digits), 0);
  double u = v;
  for (int j = 0; j < digits; ++j) {
    u *= 2.0;
    if (u >= 1.0) {
      out[static_cast<size_t>(j)] = 1;
      u -= 1.0;
    }
  }
  return out;
}

// Rewrites a terminating expansion as the one ending in ones: the deepest
// set digit moves one place down.  Applies only when the expansion
// terminated inside the window and the value is nonzero.
void make_nonterminating(std::vector<uint8_t>& d, double v) {
  if (v <= 0.0) return;
  double u = v;
  for (uint8_t b : d) {
    u = 2.0 * u - b;
  }
  if (u != 0.0) return;  // expansion continues past the window
  auto last = std::find(d.rbegin(), d.rend(), uint8_t{1});
  if (last == d.rend()) return;
  *last = 0;
  std::fill(d.rbegin(), last, uint8_t{1});
}

double horner_value(const BitState& s, bool xi_side) {
  // Most significant digit last so each step is value/2 + digit/2.
  long double v = 0.0L;
  if (xi_side) {
    for (int n = s.xi_count() - 1; n >= 0; --n) {
      v = 0.5L * (v + s.xi_digit(n));
    }
  } else {
    for (int m = s.x_count(); m >= 1; --m) {
      v = 0.5L * (v + s.x_digit(m));
    }
  }
  return static_cast<double>(v);
}

void check_coordinate(double c, const char* name) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0,1]");
  }
}

}  // namespace

BitState::BitState(int half_length) {
  if (half_length < 1) throw std::domain_error("window half-length must be positive");
  bits_.assign(static_cast<size_t>(2 * half_length), 0);
  cursor_ = half_length;
}

BitState BitState::from_digits(const std::vector<uint8_t>& xi_digits,
                               const std::vector<uint8_t>& x_digits) {
  BitState s(1);
  s.bits_.assign(xi_digits.rbegin(), xi_digits.rend());
  s.bits_.insert(s.bits_.end(), x_digits.begin(), x_digits.end());
  s.cursor_ = static_cast<int>(xi_digits.size());
  return s;
}

double BitState::xi_value() const { return horner_value(*this, true); }
double BitState::x_value() const { return horner_value(*this, false); }

uint64_t BitState::x_window64(int offset) const {
  uint64_t w = 0;
  const int avail = x_count();
  const int hi = std::min(offset + 64, avail);
  for (int m = offset + 1; m <= hi; ++m) {
    w |= static_cast<uint64_t>(x_digit(m)) << (64 - (m - offset));
  }
  return w;
}

std::vector<uint64_t> BitState::xi_words() const {
  std::vector<uint64_t> words(static_cast<size_t>((xi_count() + 63) / 64), 0);
  for (int n = 0; n < xi_count(); ++n) {
    words[static_cast<size_t>(n >> 6)] |=
        static_cast<uint64_t>(xi_digit(n)) << (63 - (n & 63));
  }
  return words;
}

BitState BitState::with_x(double x) const {
  check_coordinate(x, "x");
  BitState s = *this;
  auto digits = expand(x, x_count());
  std::copy(digits.begin(), digits.end(), s.bits_.begin() + cursor_);
  return s;
}

BitState encode(const PhasePoint& p, int half_length) {
  check_coordinate(p.xi, "xi");
  check_coordinate(p.x, "x");
  return BitState::from_digits(expand(p.xi, half_length), expand(p.x, half_length));
}

BitState encode_nonterminating(const PhasePoint& p, int half_length) {
  check_coordinate(p.xi, "xi");
  check_coordinate(p.x, "x");
  auto xi = expand(p.xi, half_length);
  auto x = expand(p.x, half_length);
  make_nonterminating(xi, p.xi);
  make_nonterminating(x, p.x);
  return BitState::from_digits(xi, x);
}

PhasePoint decode(const BitState& s) { return {s.xi_value(), s.x_value()}; }

BitState baker(const BitState& s) { return baker_iter(s, 1); }
BitState baker_inverse(const BitState& s) { return baker_iter(s, -1); }

BitState baker_iter(const BitState& s, int k) {
  if (k > s.xi_count() || -k > s.x_count()) {
    throw WindowExhausted("baker iterate of " + std::to_string(k) +
                          " steps exceeds the digit window (xi digits: " +
                          std::to_string(s.xi_count()) +
                          ", x digits: " + std::to_string(s.x_count()) + ")");
  }
  BitState t = s;
  t.cursor_ -= k;
  return t;
}

}  // namespace wcurve::bitdyn
