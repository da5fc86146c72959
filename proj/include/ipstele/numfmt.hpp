#pragma once

#include <string>

namespace ipstele {

/// `precision` significant digits, fixed notation for 1e-6 <= |v| < 1e6 and
/// scientific otherwise, trailing zeros dropped. nan / inf / -inf spelled out.
std::string format_number(double v, int precision = 12);

}  // namespace ipstele
