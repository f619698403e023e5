#include "egtsec/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace egtsec {

namespace {

std::string emit(double v, std::chars_format fmt, int precision) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt, precision);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string format_g17(double v) { return emit(v, std::chars_format::general, 17); }

std::string format_fixed(double v, int decimals) {
  return emit(v, std::chars_format::fixed, decimals);
}

std::string format_sci(double v, int decimals) {
  return emit(v, std::chars_format::scientific, decimals);
}

}  // namespace egtsec
