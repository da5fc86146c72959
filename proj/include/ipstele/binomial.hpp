#pragma once

#include <cmath>

namespace ipstele {

inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

/// Binomial probability C(n,k) t^(n-k) (1-t)^k: k of n photons leave a beam
/// splitter of transmissivity t through the reflected port.
inline double binomial_pmf(int n, int k, double t) {
  if (k < 0 || k > n) return 0.0;
  if (t >= 1.0) return k == 0 ? 1.0 : 0.0;
  if (t <= 0.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_binomial(n, k) + (n - k) * std::log(t) + k * std::log1p(-t));
}

inline double binomial_amplitude(int n, int k, double t) { return std::sqrt(binomial_pmf(n, k, t)); }

}  // namespace ipstele
