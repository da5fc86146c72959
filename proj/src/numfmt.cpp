#include "ipstele/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ipstele/errors.hpp"

namespace ipstele {

namespace {

// "1.2500" -> "1.25", "3.000" -> "3"
void strip_zeros(std::string& s) {
  if (s.find('.') == std::string::npos) return;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
}

}  // namespace

std::string format_number(double v, int precision) {
  if (precision < 1 || precision > 17) throw DomainError("format_number: precision must lie in [1, 17]");
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const double a = std::abs(v);
  if (a >= 1e6 || a < 1e-6) {
    std::snprintf(buf, sizeof buf, "%.*e", precision - 1, v);
    std::string s(buf);
    const auto e = s.find('e');
    std::string mant = s.substr(0, e);
    strip_zeros(mant);
    return mant + s.substr(e);
  }
  const int exponent = static_cast<int>(std::floor(std::log10(a)));
  const int decimals = std::max(0, precision - 1 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  strip_zeros(s);
  if (s == "-0") s = "0";
  return s;
}

}  // namespace ipstele
