#pragma once

// Parameter sweeps and the figure presets, with CSV / JSON emission.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ipstele/fock.hpp"

namespace ipstele {

enum class SweepQuantity { p11, avg_fidelity, mean_photons, delta_ab, x_th, x_23, secure_window };

/// Accepts both "avg-fidelity" and "avg_fidelity".
std::optional<SweepQuantity> parse_quantity(std::string_view name);
std::string quantity_name(SweepQuantity q);

/// Dense states above this per-mode cutoff are not built unless a cutoff is
/// forced; their numerical columns are left as nan.
inline constexpr int kMaxDenseCutoff = 40;

struct SweepSpec {
  std::string preset;  // "fig2" ... "fig5"; empty for a quantity sweep
  SweepQuantity quantity = SweepQuantity::p11;
  std::vector<double> x;
  std::vector<double> tau;  // with eta: every (tau, eta) combination
  std::vector<double> eta;
  std::vector<double> tau_eff;  // alternative to (tau, eta)
  bool numeric = false;         // add Fock-space columns next to closed forms
  double tail_tol = TruncationConfig::kDefaultTailTol;
  std::optional<int> dim;
  int quad_radial = 40;
  int quad_angular = 64;
  Complex alpha{};
  int jobs = 0;  // 0: all available threads

  /// Throws DomainError naming the violated condition.
  void validate() const;
};

/// Preset grids: x = 0.01 ... 0.99 in steps of 0.01, tau_eff in {1, 0.9, 0.8, 0.5}
/// (fig2-fig4); fig5 scans tau_eff = 0.51 ... 0.99, 0.995, 0.999.
SweepSpec preset_spec(std::string_view name);
std::vector<std::string> preset_names();

struct ColumnCheck {
  std::string numeric;
  std::string closed;
  double tolerance = 0.0;
  double max_abs_dev = 0.0;  // over rows where both are finite
  bool pass = true;
};

struct SweepResult {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::string> column_docs;
  std::vector<std::vector<double>> rows;
  std::vector<ColumnCheck> checks;

  bool all_pass() const;
  void write_csv(std::ostream& out, int precision = 12) const;
  void write_json(std::ostream& out, int precision = 12) const;
};

SweepResult run_sweep(const SweepSpec& spec);

/// "0.1,0.3,0.5" or "lo:hi:step" (inclusive up to rounding).
std::vector<double> parse_grid(std::string_view text);

}  // namespace ipstele
