#include "ipstele/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

#include <omp.h>

#include "json.hpp"

#include "ipstele/analysis.hpp"
#include "ipstele/errors.hpp"
#include "ipstele/ips.hpp"
#include "ipstele/numfmt.hpp"
#include "ipstele/optics.hpp"
#include "ipstele/teleport.hpp"
#include "ipstele/thresholds.hpp"

namespace ipstele {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kP11Tol = 1e-8;
constexpr double kFidelityTol = 1e-4;
constexpr double kMomentTol = 1e-8;

struct Point {
  double x;
  double tau;
  double eta;
  double tau_eff() const { return effective_transmissivity(tau, eta); }
};

std::string tag(double tau_eff) { return "t" + format_number(tau_eff, 6); }

// Per-mode cutoff for a dense conditional state, or nullopt if too large.
std::optional<int> dense_cutoff(const SweepSpec& spec, const IpsParams& p) {
  if (spec.dim) return *spec.dim;
  const int d = p.can_condition() ? ips_cutoff(p, spec.tail_tol) : twb_cutoff(p.x(), spec.tail_tol);
  if (d > kMaxDenseCutoff) return std::nullopt;
  return d;
}

double p11_numeric(const SweepSpec& spec, const IpsParams& p) {
  const auto d = dense_cutoff(spec, p);
  if (!d) return kNaN;
  return p11_numerical(p, TruncationConfig({*d, *d}, spec.tail_tol));
}

double fidelity_numeric(const SweepSpec& spec, const IpsParams& p) {
  if (!p.can_condition()) return kNaN;
  const auto d = dense_cutoff(spec, p);
  if (!d) return kNaN;
  const DensityOperator rho = ips_state_direct(p, TruncationConfig({*d, *d}, spec.tail_tol));
  return average_fidelity_quadrature(rho, spec.alpha,
                                     default_grid(rho, spec.alpha, spec.quad_radial, spec.quad_angular));
}

double ips_total_photons(const SweepSpec& spec, const IpsParams& p) {
  if (!p.can_condition()) return subtracted_twb_mean_photons(p.x());
  const IpsMoments m = spec.dim ? ips_moments(p, *spec.dim) : ips_moments(p, spec.tail_tol);
  return m.mean_a + m.mean_b;
}

double ips_total_photons_dense(const SweepSpec& spec, const IpsParams& p) {
  if (!p.can_condition()) return kNaN;
  const auto d = dense_cutoff(spec, p);
  if (!d) return kNaN;
  const auto [na, nb] = mean_photons_numerical(ips_state_direct(p, TruncationConfig({*d, *d}, spec.tail_tol)));
  return na + nb;
}

double delta_numeric(const SweepSpec& spec, const IpsParams& p) {
  if (!p.can_condition()) return kNaN;
  const IpsMoments m = spec.dim ? ips_moments(p, *spec.dim) : ips_moments(p, spec.tail_tol);
  return correlation_report(m).delta_ab;
}

// Evaluates rows in parallel; rows land in grid order.
template <typename Item>
std::vector<std::vector<double>> parallel_rows(const std::vector<Item>& items, int jobs,
                                               const std::function<std::vector<double>(const Item&)>& f) {
  std::vector<std::vector<double>> rows(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(items.size()); ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      rows[k] = f(items[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

int column_index(const SweepResult& r, const std::string& name) {
  const auto it = std::find(r.columns.begin(), r.columns.end(), name);
  if (it == r.columns.end()) throw DomainError("sweep: no column " + name);
  return static_cast<int>(it - r.columns.begin());
}

void add_column(SweepResult& r, std::string name, std::string doc) {
  r.columns.push_back(std::move(name));
  r.column_docs.push_back(std::move(doc));
}

// Adds ColumnCheck entries for (numeric, closed) pairs and, for long-format
// sweeps, fills the per-row pass column.
void finish_checks(SweepResult& r, const std::vector<std::tuple<std::string, std::string, double>>& pairs,
                   const std::string& pass_column = {}) {
  const int pass_idx = pass_column.empty() ? -1 : column_index(r, pass_column);
  for (const auto& [num, closed, tol] : pairs) {
    ColumnCheck c{num, closed, tol, 0.0, true};
    const int i = column_index(r, num);
    const int j = column_index(r, closed);
    for (auto& row : r.rows) {
      const double a = row[static_cast<std::size_t>(i)];
      const double b = row[static_cast<std::size_t>(j)];
      const bool finite = std::isfinite(a) && std::isfinite(b);
      if (finite) {
        const double dev = std::abs(a - b);
        c.max_abs_dev = std::max(c.max_abs_dev, dev);
        if (!(dev <= tol)) c.pass = false;
      }
      if (pass_idx >= 0) row[static_cast<std::size_t>(pass_idx)] = finite ? (std::abs(a - b) <= tol ? 1.0 : 0.0) : kNaN;
    }
    r.checks.push_back(c);
  }
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i], 12);
  return s;
}

void common_metadata(SweepResult& r, const SweepSpec& spec) {
  r.metadata.emplace_back("program", std::string("ipstele ") + IPSTELE_VERSION);
  r.metadata.emplace_back("sweep", spec.preset.empty() ? quantity_name(spec.quantity) : spec.preset);
  r.metadata.emplace_back("tail_tol", format_number(spec.tail_tol, 12));
  r.metadata.emplace_back("dim", spec.dim ? std::to_string(*spec.dim) : "auto");
  r.metadata.emplace_back("numeric", spec.numeric ? "yes" : "no");
  if (spec.numeric) {
    r.metadata.emplace_back("max_dense_cutoff", std::to_string(kMaxDenseCutoff));
    r.metadata.emplace_back("quadrature", std::to_string(spec.quad_radial) + "x" + std::to_string(spec.quad_angular));
    r.metadata.emplace_back("alpha", format_number(spec.alpha.real(), 12) + "," + format_number(spec.alpha.imag(), 12));
  }
}

// ---- figure presets: one row per x (fig2-4) or per tau_eff (fig5) ----

SweepResult run_preset(const SweepSpec& spec) {
  SweepResult r;
  common_metadata(r, spec);
  r.metadata.emplace_back("x", join(spec.x));
  r.metadata.emplace_back("tau_eff", join(spec.tau_eff));
  const std::vector<double>& ts = spec.tau_eff;
  const std::string& name = spec.preset;

  if (name == "fig5") {
    add_column(r, "tau_eff", "effective transmissivity");
    add_column(r, "x_th", "x where the IPS fidelity meets (1+x)/2; nan if none");
    add_column(r, "x_23", "x where the IPS fidelity reaches 2/3; nan if none");
    add_column(r, "one_third", "x = 1/3, where (1+x)/2 = 2/3");
    add_column(r, "window_lo", "lower edge of x_23 < x < x_th; nan if empty");
    add_column(r, "window_hi", "upper edge of x_23 < x < x_th; nan if empty");
    const ThresholdCurve c = threshold_curve(ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      r.rows.push_back({ts[i], c.x_th[i].value_or(kNaN), c.x_23[i].value_or(kNaN), 1.0 / 3.0,
                        c.window[i] ? c.window[i]->first : kNaN, c.window[i] ? c.window[i]->second : kNaN});
    }
    return r;
  }

  add_column(r, "x", "twin-beam parameter");
  std::vector<std::tuple<std::string, std::string, double>> pairs;
  std::function<std::vector<double>(const double&)> row;
  if (name == "fig2") {
    for (double t : ts) add_column(r, "p11_" + tag(t), "double-click probability, closed form, tau_eff=" + format_number(t));
    if (spec.numeric) {
      for (double t : ts) {
        add_column(r, "p11_num_" + tag(t), "double-click probability, Fock-space trace, tau_eff=" + format_number(t));
        pairs.emplace_back("p11_num_" + tag(t), "p11_" + tag(t), kP11Tol);
      }
    }
    row = [&](const double& x) {
      std::vector<double> v{x};
      for (double t : ts) v.push_back(p11_effective(x, t));
      if (spec.numeric) {
        for (double t : ts) v.push_back(p11_numeric(spec, IpsParams::effective(x, t)));
      }
      return v;
    };
  } else if (name == "fig3") {
    add_column(r, "photons_twb", "twin-beam total mean photon number 2x^2/(1-x^2)");
    for (double t : ts) {
      add_column(r, "photons_" + tag(t),
                 "IPS total mean photon number, tau_eff=" + format_number(t) +
                     (t >= 1.0 ? " (one photon subtracted per arm, closed form)" : ""));
    }
    if (spec.numeric) {
      for (double t : ts) {
        if (t >= 1.0) continue;
        add_column(r, "photons_dense_" + tag(t), "same from the dense state, tau_eff=" + format_number(t));
        pairs.emplace_back("photons_dense_" + tag(t), "photons_" + tag(t), kMomentTol);
      }
    }
    row = [&](const double& x) {
      std::vector<double> v{x, twb_mean_photons(x)};
      for (double t : ts) v.push_back(ips_total_photons(spec, IpsParams::effective(x, t)));
      if (spec.numeric) {
        for (double t : ts) {
          if (t < 1.0) v.push_back(ips_total_photons_dense(spec, IpsParams::effective(x, t)));
        }
      }
      return v;
    };
  } else if (name == "fig4") {
    for (double t : ts) add_column(r, "fidelity_" + tag(t), "IPS average fidelity, closed form, tau_eff=" + format_number(t));
    add_column(r, "fidelity_twb", "twin-beam average fidelity (1+x)/2");
    if (spec.numeric) {
      for (double t : ts) {
        if (t >= 1.0) continue;
        add_column(r, "fidelity_num_" + tag(t), "IPS average fidelity, quadrature, tau_eff=" + format_number(t));
        pairs.emplace_back("fidelity_num_" + tag(t), "fidelity_" + tag(t), kFidelityTol);
      }
    }
    row = [&](const double& x) {
      std::vector<double> v{x};
      for (double t : ts) v.push_back(average_fidelity_closed(x, t));
      v.push_back(twb_average_fidelity(x));
      if (spec.numeric) {
        for (double t : ts) {
          if (t < 1.0) v.push_back(fidelity_numeric(spec, IpsParams::effective(x, t)));
        }
      }
      return v;
    };
  } else {
    throw DomainError("sweep: unknown preset '" + name + "'");
  }
  r.rows = parallel_rows<double>(spec.x, spec.jobs, row);
  finish_checks(r, pairs);
  return r;
}

// ---- quantity sweeps: one row per grid point ----

std::vector<Point> grid_points(const SweepSpec& spec) {
  std::vector<std::pair<double, double>> knobs;
  if (!spec.tau_eff.empty()) {
    for (double t : spec.tau_eff) knobs.emplace_back(t, 1.0);
  } else {
    const std::vector<double> etas = spec.eta.empty() ? std::vector<double>{1.0} : spec.eta;
    for (double t : spec.tau)
      for (double e : etas) knobs.emplace_back(t, e);
  }
  std::vector<Point> pts;
  for (double x : spec.x)
    for (const auto& [t, e] : knobs) pts.push_back({x, t, e});
  return pts;
}

SweepResult run_thresholds(const SweepSpec& spec) {
  SweepResult r;
  common_metadata(r, spec);
  std::vector<double> ts = spec.tau_eff;
  if (ts.empty()) {
    const std::vector<double> etas = spec.eta.empty() ? std::vector<double>{1.0} : spec.eta;
    for (double t : spec.tau)
      for (double e : etas) ts.push_back(effective_transmissivity(t, e));
  }
  r.metadata.emplace_back("tau_eff", join(ts));
  add_column(r, "tau_eff", "effective transmissivity");
  const ThresholdCurve c = threshold_curve(ts);
  switch (spec.quantity) {
    case SweepQuantity::x_th:
      add_column(r, "x_th", "x where the IPS fidelity meets (1+x)/2; nan if none");
      for (std::size_t i = 0; i < ts.size(); ++i) r.rows.push_back({ts[i], c.x_th[i].value_or(kNaN)});
      break;
    case SweepQuantity::x_23:
      add_column(r, "x_23", "x where the IPS fidelity reaches 2/3; nan if none");
      add_column(r, "one_third", "x = 1/3");
      for (std::size_t i = 0; i < ts.size(); ++i) r.rows.push_back({ts[i], c.x_23[i].value_or(kNaN), 1.0 / 3.0});
      break;
    default:
      add_column(r, "window_lo", "x_23, lower edge of the secure window; nan if empty");
      add_column(r, "window_hi", "x_th, upper edge of the secure window; nan if empty");
      for (std::size_t i = 0; i < ts.size(); ++i) {
        r.rows.push_back({ts[i], c.window[i] ? c.window[i]->first : kNaN, c.window[i] ? c.window[i]->second : kNaN});
      }
  }
  return r;
}

SweepResult run_quantity(const SweepSpec& spec) {
  if (spec.quantity == SweepQuantity::x_th || spec.quantity == SweepQuantity::x_23 ||
      spec.quantity == SweepQuantity::secure_window) {
    return run_thresholds(spec);
  }
  SweepResult r;
  common_metadata(r, spec);
  r.metadata.emplace_back("x", join(spec.x));
  if (!spec.tau_eff.empty()) {
    r.metadata.emplace_back("tau_eff", join(spec.tau_eff));
  } else {
    r.metadata.emplace_back("tau", join(spec.tau));
    r.metadata.emplace_back("eta", spec.eta.empty() ? "1" : join(spec.eta));
  }
  add_column(r, "x", "twin-beam parameter");
  add_column(r, "tau", "beam-splitter transmissivity");
  add_column(r, "eta", "detector efficiency");
  add_column(r, "tau_eff", "1 - eta (1 - tau)");

  std::string num, closed;
  double tol = 0.0;
  std::function<std::vector<double>(const Point&)> extra;
  switch (spec.quantity) {
    case SweepQuantity::p11:
      closed = "p11";
      num = "p11_numeric";
      tol = kP11Tol;
      add_column(r, closed, "double-click probability, closed form in (x, tau, eta)");
      if (spec.numeric) add_column(r, num, "double-click probability, Fock-space trace");
      extra = [&](const Point& p) {
        const IpsParams ip(p.x, p.tau, p.eta);
        std::vector<double> v{p11_closed(ip)};
        if (spec.numeric) v.push_back(p11_numeric(spec, ip));
        return v;
      };
      break;
    case SweepQuantity::avg_fidelity:
      closed = "fidelity";
      num = "fidelity_numeric";
      tol = kFidelityTol;
      add_column(r, closed, "IPS average fidelity, closed form in (x, tau_eff)");
      add_column(r, "fidelity_twb", "twin-beam average fidelity (1+x)/2");
      if (spec.numeric) add_column(r, num, "IPS average fidelity, quadrature over the (x, tau, eta) state");
      extra = [&](const Point& p) {
        std::vector<double> v{average_fidelity_closed(p.x, p.tau_eff()), twb_average_fidelity(p.x)};
        if (spec.numeric) v.push_back(fidelity_numeric(spec, IpsParams(p.x, p.tau, p.eta)));
        return v;
      };
      break;
    case SweepQuantity::mean_photons:
      closed = "photons_ips";
      num = "photons_ips_dense";
      tol = kMomentTol;
      add_column(r, "photons_twb", "twin-beam total mean photon number 2x^2/(1-x^2)");
      add_column(r, closed, "IPS total mean photon number from the photon-number distribution");
      if (spec.numeric) add_column(r, num, "same from the dense state");
      extra = [&](const Point& p) {
        const IpsParams ip(p.x, p.tau, p.eta);
        std::vector<double> v{twb_mean_photons(p.x), ips_total_photons(spec, ip)};
        if (spec.numeric) v.push_back(ips_total_photons_dense(spec, ip));
        return v;
      };
      break;
    default:
      closed = "delta_ab";
      num = "delta_ab_numeric";
      tol = kMomentTol;
      add_column(r, closed, "difference-number squeezing, closed form in (x, tau_eff)");
      if (spec.numeric) add_column(r, num, "difference-number squeezing from the (x, tau, eta) state moments");
      extra = [&](const Point& p) {
        std::vector<double> v{difference_squeezing_closed(p.x, p.tau_eff())};
        if (spec.numeric) v.push_back(delta_numeric(spec, IpsParams(p.x, p.tau, p.eta)));
        return v;
      };
  }
  if (spec.numeric) add_column(r, "pass", "1 if the numerical column is within " + format_number(tol) + " of the closed form");

  const std::vector<Point> pts = grid_points(spec);
  r.rows = parallel_rows<Point>(pts, spec.jobs, [&](const Point& p) {
    std::vector<double> v{p.x, p.tau, p.eta, p.tau_eff()};
    for (double e : extra(p)) v.push_back(e);
    if (spec.numeric) v.push_back(kNaN);
    return v;
  });
  if (spec.numeric) finish_checks(r, {{num, closed, tol}}, "pass");
  return r;
}

std::vector<double> x_percent_grid() {
  std::vector<double> x;
  for (int i = 1; i <= 99; ++i) x.push_back(i / 100.0);
  return x;
}

}  // namespace

std::optional<SweepQuantity> parse_quantity(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '-', '_');
  if (s == "p11") return SweepQuantity::p11;
  if (s == "avg_fidelity") return SweepQuantity::avg_fidelity;
  if (s == "mean_photons") return SweepQuantity::mean_photons;
  if (s == "delta_ab") return SweepQuantity::delta_ab;
  if (s == "x_th") return SweepQuantity::x_th;
  if (s == "x_23") return SweepQuantity::x_23;
  if (s == "secure_window") return SweepQuantity::secure_window;
  return std::nullopt;
}

std::string quantity_name(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::p11: return "p11";
    case SweepQuantity::avg_fidelity: return "avg-fidelity";
    case SweepQuantity::mean_photons: return "mean-photons";
    case SweepQuantity::delta_ab: return "delta-ab";
    case SweepQuantity::x_th: return "x-th";
    case SweepQuantity::x_23: return "x-23";
    case SweepQuantity::secure_window: return "secure-window";
  }
  return "?";
}

void SweepSpec::validate() const {
  const bool thresholds = preset == "fig5" || (preset.empty() && (quantity == SweepQuantity::x_th ||
                                                                   quantity == SweepQuantity::x_23 ||
                                                                   quantity == SweepQuantity::secure_window));
  if (!tau_eff.empty() && (!tau.empty() || !eta.empty())) {
    throw DomainError("sweep: give either --tau/--eta or --tau-eff, not both");
  }
  if (tau_eff.empty() && tau.empty()) throw DomainError("sweep: one of --tau or --tau-eff is required");
  if (!eta.empty() && tau.empty()) throw DomainError("sweep: --eta needs --tau");
  if (!thresholds && x.empty()) throw DomainError("sweep: the x grid is empty");
  for (double v : x) {
    if (!(v > 0.0 && v < 1.0)) throw DomainError("sweep: x values must lie in (0, 1), got " + format_number(v));
  }
  for (double v : tau_eff) {
    if (!(v > 0.0 && v <= 1.0)) throw DomainError("sweep: tau_eff values must lie in (0, 1], got " + format_number(v));
  }
  for (double v : tau) {
    if (!(v > 0.0 && v <= 1.0)) throw DomainError("sweep: tau values must lie in (0, 1], got " + format_number(v));
  }
  for (double v : eta) {
    if (!(v > 0.0 && v <= 1.0)) throw DomainError("sweep: eta values must lie in (0, 1], got " + format_number(v));
  }
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw DomainError("sweep: tail_tol must lie in (0, 1)");
  if (dim && *dim < 1) throw DomainError("sweep: --dim must be >= 1");
  if (quad_radial < 1 || quad_angular < 1) throw DomainError("sweep: quadrature node counts must be >= 1");
  if (jobs < 0) throw DomainError("sweep: --jobs must be >= 0");
  if (!preset.empty() && preset != "fig2" && preset != "fig3" && preset != "fig4" && preset != "fig5") {
    throw DomainError("sweep: unknown preset '" + preset + "'");
  }
}

SweepSpec preset_spec(std::string_view name) {
  SweepSpec s;
  s.preset = std::string(name);
  if (name == "fig5") {
    for (int i = 51; i <= 99; ++i) s.tau_eff.push_back(i / 100.0);
    s.tau_eff.push_back(0.995);
    s.tau_eff.push_back(0.999);
    s.quantity = SweepQuantity::x_th;
  } else if (name == "fig2" || name == "fig3" || name == "fig4") {
    s.x = x_percent_grid();
    s.tau_eff = {0.5, 0.8, 0.9, 1.0};
    s.quantity = name == "fig2" ? SweepQuantity::p11 : name == "fig3" ? SweepQuantity::mean_photons
                                                                      : SweepQuantity::avg_fidelity;
  } else {
    throw DomainError("sweep: unknown preset '" + std::string(name) + "'");
  }
  return s;
}

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4", "fig5"}; }

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  return spec.preset.empty() ? run_quantity(spec) : run_preset(spec);
}

bool SweepResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ColumnCheck& c) { return c.pass; });
}

void SweepResult::write_csv(std::ostream& out, int precision) const {
  for (const auto& [k, v] : metadata) out << "# " << k << ": " << v << '\n';
  out << "# columns:\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out << "#   " << columns[i] << ": " << column_docs[i] << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i], precision);
    out << '\n';
  }
  for (const ColumnCheck& c : checks) {
    out << "# max_abs_dev " << c.numeric << " vs " << c.closed << ": " << format_number(c.max_abs_dev, precision)
        << " (tol " << format_number(c.tolerance, precision) << ") " << (c.pass ? "PASS" : "FAIL") << '\n';
  }
}

void SweepResult::write_json(std::ostream& out, int precision) const {
  using nlohmann::ordered_json;
  auto number = [precision](double v) -> ordered_json {
    if (!std::isfinite(v)) return nullptr;
    return std::stod(format_number(v, precision));
  };
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  ordered_json cols = ordered_json::object();
  for (std::size_t i = 0; i < columns.size(); ++i) cols[columns[i]] = column_docs[i];
  meta["columns"] = cols;
  ordered_json checks_json = ordered_json::array();
  for (const ColumnCheck& c : checks) {
    checks_json.push_back({{"numeric", c.numeric},
                           {"closed", c.closed},
                           {"tolerance", c.tolerance},
                           {"max_abs_dev", number(c.max_abs_dev)},
                           {"pass", c.pass}});
  }
  meta["checks"] = checks_json;
  ordered_json rows_json = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = number(row[i]);
    rows_json.push_back(std::move(obj));
  }
  ordered_json doc = ordered_json::object();
  doc["metadata"] = meta;
  doc["rows"] = rows_json;
  out << doc.dump(2) << '\n';
}

std::vector<double> parse_grid(std::string_view text) {
  std::string s(text);
  auto to_double = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw DomainError("grid: cannot parse '" + t + "' in '" + s + "'");
    return v;
  };
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw DomainError("grid: a range is lo:hi:step, got '" + s + "'");
    const double lo = to_double(parts[0]);
    const double hi = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0) || hi < lo) throw DomainError("grid: range '" + s + "' needs lo <= hi and step > 0");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    if (n > 10000000) throw DomainError("grid: range '" + s + "' is too long");
    // Snap to 12 decimals so 0.1 + 2 * 0.1 prints and evaluates as 0.3.
    for (long i = 0; i <= n; ++i) out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
    return out;
  }
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(to_double(p));
  if (out.empty()) throw DomainError("grid: empty list");
  return out;
}

}  // namespace ipstele
