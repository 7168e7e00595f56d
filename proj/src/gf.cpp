#include "regenlab/gf.hpp"

#include "regenlab/errors.hpp"

namespace regenlab {

GaloisField::GaloisField(int width) : width_(width) {
  switch (width) {
    case 1:
      poly_ = 0x3;
      break;
    case 8:
      poly_ = 0x11D;
      break;
    case 16:
      poly_ = 0x1100B;
      break;
    default:
      throw Error(Errc::InvalidParams, "unsupported field width (expected 1, 8 or 16)");
  }
  order_ = 1u << width_;
  log_.assign(order_, 0);
  exp_.assign(2 * (order_ - 1), 0);

  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < order_ - 1; ++i) {
    if (x == 1 && i != 0) throw Error(Errc::InvalidParams, "reduction polynomial is not primitive");
    exp_[i] = static_cast<std::uint16_t>(x);
    log_[x] = static_cast<std::uint16_t>(i);
    x <<= 1;
    if (x & order_) x ^= poly_;
  }
  if (x != 1) throw Error(Errc::InvalidParams, "reduction polynomial is not primitive");
  for (std::uint32_t i = order_ - 1; i < 2 * (order_ - 1); ++i) exp_[i] = exp_[i - (order_ - 1)];
}

std::uint16_t GaloisField::inv(std::uint16_t a) const {
  if (a == 0) throw Error(Errc::InvalidParams, "inverse of zero");
  return exp_[(order_ - 1) - log_[a]];
}

std::uint16_t GaloisField::div(std::uint16_t a, std::uint16_t b) const {
  if (b == 0) throw Error(Errc::InvalidParams, "division by zero");
  if (a == 0) return 0;
  return exp_[std::uint32_t(log_[a]) + (order_ - 1) - log_[b]];
}

const GaloisField& GaloisField::gf2() {
  static const GaloisField f(1);
  return f;
}

const GaloisField& GaloisField::gf8() {
  static const GaloisField f(8);
  return f;
}

const GaloisField& GaloisField::gf16() {
  static const GaloisField f(16);
  return f;
}

}  // namespace regenlab
