#pragma once

#include <cstdint>
#include <vector>

namespace regenlab {

// Arithmetic over GF(2^w) for w in {1, 8, 16}. Multiplication goes through
// log/antilog tables built once at construction (256 KiB for GF(2^16)); the
// tables are immutable afterwards, so a single instance can be shared across
// threads without synchronization.
//
// Reduction polynomials:
//   GF(2^16): x^16 + x^12 + x^3 + x + 1   (0x1100B)
//   GF(2^8) : x^8 + x^4 + x^3 + x^2 + 1   (0x11D)
class GaloisField {
 public:
  explicit GaloisField(int width);

  static const GaloisField& gf2();
  static const GaloisField& gf8();
  static const GaloisField& gf16();

  int width() const { return width_; }
  std::uint32_t order() const { return order_; }
  std::uint16_t max_element() const { return static_cast<std::uint16_t>(order_ - 1); }
  std::uint32_t reduction_poly() const { return poly_; }

  std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return a ^ b; }
  std::uint16_t sub(std::uint16_t a, std::uint16_t b) const { return a ^ b; }

  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[std::uint32_t(log_[a]) + log_[b]];
  }

  // Multiplicative inverse; throws on a == 0.
  std::uint16_t inv(std::uint16_t a) const;

  // a / b; throws on b == 0.
  std::uint16_t div(std::uint16_t a, std::uint16_t b) const;

 private:
  int width_;
  std::uint32_t order_;
  std::uint32_t poly_;
  std::vector<std::uint16_t> log_;  // indexed by element, log_[0] unused
  std::vector<std::uint16_t> exp_;  // doubled so mul never reduces mod (order-1)
};

}  // namespace regenlab
