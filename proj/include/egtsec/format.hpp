#pragma once

#include <string>

namespace egtsec {

// Locale-independent number formatting, '.' decimal separator.

// 17 significant digits, enough for an exact double round trip.
std::string format_g17(double v);
std::string format_fixed(double v, int decimals);
std::string format_sci(double v, int decimals);

}  // namespace egtsec
