#pragma once

// Decision thresholds of the averaged fidelity in x: where the IPS resource
// overtakes the twin beam (x_th) and where it reaches 2/3 (x_23).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ipstele {

inline constexpr double kRootTol = 1e-10;
inline constexpr double kScanEdge = 1e-6;
inline constexpr int kScanPoints = 512;

/// F(x, tau_eff) - (1 + x) / 2 from the closed forms.
double improvement_gap(double x, double tau_eff);

/// Scans f on kScanPoints points of [lo, hi] and bisects the bracketing
/// interval to kRootTol. None if f keeps one sign; AmbiguityError listing the
/// brackets if it changes sign more than once.
std::optional<double> unique_root(const std::function<double(double)>& f, double lo, double hi,
                                  const std::string& what);

std::optional<double> x_threshold(double tau_eff);
std::optional<double> x_two_thirds(double tau_eff);

/// (x_23, x_th) when both exist and x_23 < x_th.
std::optional<std::pair<double, double>> secure_window(double tau_eff);

struct ThresholdCurve {
  std::vector<double> tau_eff_grid;
  std::vector<std::optional<double>> x_th;
  std::vector<std::optional<double>> x_23;
  std::vector<std::optional<std::pair<double, double>>> window;

  /// Grid points where 0 < x_23 < x_th < 1 and x_23 < 1/3 fail although both
  /// roots exist. The curve is returned as computed; callers decide.
  std::vector<std::string> violations() const;
};

/// Evaluated in parallel; results are stored in grid order.
ThresholdCurve threshold_curve(std::span<const double> tau_eff_grid);

/// 0.55, 0.60, ..., 0.95, 0.999
std::vector<double> default_threshold_grid();

}  // namespace ipstele
