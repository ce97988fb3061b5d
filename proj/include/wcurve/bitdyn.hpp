#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wcurve::bitdyn {

// Raised when a Baker iteration would step past the digit window.  The
// caller must rebuild the state with a larger half-length.
class WindowExhausted : public std::runtime_error {
 public:
  explicit WindowExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct PhasePoint {
  double xi = 0.0;
  double x = 0.0;
};

// Read-only view of packed xi digits; digit 0 sits at the MSB of word 0.
// Digit n is the n-th digit consumed by forward Baker iteration.
struct XiView {
  const uint64_t* words = nullptr;
  int count = 0;

  int bit(int n) const { return static_cast<int>((words[n >> 6] >> (63 - (n & 63))) & 1u); }
};

// Exact symbolic state on the unit square: an ordered window of binary
// digits with a cursor.  Digits left of the cursor encode xi (the digit
// adjacent to the cursor is the most significant one), digits right of it
// encode x.  The Baker transformation is a cursor move, which makes forward
// and backward iteration lossless as long as digits remain on the consumed
// side.
class BitState {
 public:
  static constexpr int kDefaultHalfLength = 64;

  // All-zero window, cursor centered.
  explicit BitState(int half_length = kDefaultHalfLength);

  // Builds a state from explicit digits.  xi_digits are ordered as consumed
  // by forward iteration (most significant first); x_digits are ordered by
  // increasing depth (most significant first).
  static BitState from_digits(const std::vector<uint8_t>& xi_digits,
                              const std::vector<uint8_t>& x_digits);

  int window_size() const { return static_cast<int>(bits_.size()); }
  int cursor() const { return cursor_; }
  int xi_count() const { return cursor_; }
  int x_count() const { return window_size() - cursor_; }

  // xi digit at depth n (n = 0 is the most significant), n in [0, xi_count).
  int xi_digit(int n) const { return bits_[cursor_ - 1 - n]; }
  // x digit at depth m (m = 1 is the most significant), m in [1, x_count].
  int x_digit(int m) const { return bits_[cursor_ + m - 1]; }

  // Decoded coordinates of the represented dyadic point.
  double xi_value() const;
  double x_value() const;

  // First 64 digits of the x side starting below depth `offset`, i.e. the
  // value 2^offset * x mod 1 of the represented point truncated to 64
  // digits.  Digits past the window read as zero.
  uint64_t x_window64(int offset) const;
  double x_fraction(int offset) const {
    return static_cast<double>(x_window64(offset)) * 0x1.0p-64;
  }

  // Packs the xi side for streaming consumption.
  std::vector<uint64_t> xi_words() const;

  // Same xi side, x side replaced by the truncated expansion of `x`.
  BitState with_x(double x) const;

  bool operator==(const BitState& o) const = default;

 private:
  friend BitState baker_iter(const BitState&, int);
  std::vector<uint8_t> bits_;
  int cursor_ = 0;
};

// Truncated (terminating) dyadic expansions of both coordinates; the only
// convention under which decode(encode(p, L)) = p holds exactly for every
// p with coordinates of at most L digits.  The value 1 encodes as all ones.
BitState encode(const PhasePoint& p, int half_length = BitState::kDefaultHalfLength);

// Variant selecting the expansion that ends in ones for dyadic rationals in
// (0,1], matching the convention that no admissible digit sequence is
// eventually zero.  Truncation makes this lossy on dyadic inputs; it exists
// for boundary-convention experiments, not for the numerical pipelines.
BitState encode_nonterminating(const PhasePoint& p, int half_length = BitState::kDefaultHalfLength);

PhasePoint decode(const BitState& s);

// One forward Baker step: the leading xi digit becomes the leading x digit,
// so the decoded values move by (xi, x) -> (2 xi mod 1, (xi0 + x)/2).
BitState baker(const BitState& s);
BitState baker_inverse(const BitState& s);

// k-th iterate; k < 0 walks backward.  Bit-for-bit invertible:
// baker_iter(baker_iter(s, k), -k) == s whenever both calls are in window.
BitState baker_iter(const BitState& s, int k);

}  // namespace wcurve::bitdyn
