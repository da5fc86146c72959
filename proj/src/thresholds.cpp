#include "ipstele/thresholds.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "ipstele/errors.hpp"
#include "ipstele/teleport.hpp"

namespace ipstele {

namespace {

void require_tau_eff(double tau_eff) {
  if (!(tau_eff > 0.0 && tau_eff <= 1.0)) {
    throw DomainError("thresholds: tau_eff must lie in (0, 1], got " + std::to_string(tau_eff));
  }
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

double improvement_gap(double x, double tau_eff) {
  return average_fidelity_closed(x, tau_eff) - twb_average_fidelity(x);
}

std::optional<double> unique_root(const std::function<double(double)>& f, double lo, double hi,
                                  const std::string& what) {
  std::vector<double> xs(kScanPoints), fs(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    xs[i] = lo + (hi - lo) * i / (kScanPoints - 1);
    fs[i] = f(xs[i]);
  }
  std::vector<std::pair<double, double>> brackets;
  for (int i = 0; i + 1 < kScanPoints; ++i) {
    const int s0 = sign(fs[i]);
    const int s1 = sign(fs[i + 1]);
    if (s0 == 0 && i == 0) brackets.emplace_back(xs[i], xs[i]);
    if (s1 == 0) {
      brackets.emplace_back(xs[i + 1], xs[i + 1]);
    } else if (s0 * s1 < 0) {
      brackets.emplace_back(xs[i], xs[i + 1]);
    }
  }
  if (brackets.empty()) return std::nullopt;
  if (brackets.size() > 1) {
    std::ostringstream msg;
    msg << what << ": " << brackets.size() << " sign changes in [" << lo << ", " << hi << "]:";
    for (const auto& [a, b] : brackets) msg << " (" << a << ", " << b << ")";
    throw AmbiguityError(msg.str());
  }
  double a = brackets[0].first;
  double b = brackets[0].second;
  double fa = f(a);
  while (b - a > kRootTol) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if (sign(fm) == sign(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::optional<double> x_threshold(double tau_eff) {
  require_tau_eff(tau_eff);
  if (tau_eff <= 0.5) return std::nullopt;
  return unique_root([tau_eff](double x) { return improvement_gap(x, tau_eff); }, kScanEdge, 1.0 - kScanEdge,
                     "x_th(" + std::to_string(tau_eff) + ")");
}

std::optional<double> x_two_thirds(double tau_eff) {
  require_tau_eff(tau_eff);
  return unique_root([tau_eff](double x) { return average_fidelity_closed(x, tau_eff) - 2.0 / 3.0; }, kScanEdge,
                     1.0 - kScanEdge, "x_23(" + std::to_string(tau_eff) + ")");
}

std::optional<std::pair<double, double>> secure_window(double tau_eff) {
  const auto th = x_threshold(tau_eff);
  const auto s = x_two_thirds(tau_eff);
  if (th && s && *s < *th) return std::make_pair(*s, *th);
  return std::nullopt;
}

std::vector<std::string> ThresholdCurve::violations() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tau_eff_grid.size(); ++i) {
    if (!x_th[i] || !x_23[i]) continue;
    const double th = *x_th[i];
    const double s = *x_23[i];
    if (!(0.0 < s && s < th && th < 1.0 && s < 1.0 / 3.0)) {
      std::ostringstream msg;
      msg << "tau_eff=" << tau_eff_grid[i] << ": x_23=" << s << " x_th=" << th;
      out.push_back(msg.str());
    }
  }
  return out;
}

ThresholdCurve threshold_curve(std::span<const double> tau_eff_grid) {
  ThresholdCurve c;
  const std::size_t n = tau_eff_grid.size();
  c.tau_eff_grid.assign(tau_eff_grid.begin(), tau_eff_grid.end());
  c.x_th.resize(n);
  c.x_23.resize(n);
  c.window.resize(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      c.x_th[k] = x_threshold(c.tau_eff_grid[k]);
      c.x_23[k] = x_two_thirds(c.tau_eff_grid[k]);
      if (c.x_th[k] && c.x_23[k] && *c.x_23[k] < *c.x_th[k]) c.window[k] = std::make_pair(*c.x_23[k], *c.x_th[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return c;
}

std::vector<double> default_threshold_grid() {
  std::vector<double> g;
  for (int i = 55; i <= 95; i += 5) g.push_back(i / 100.0);
  g.push_back(0.999);
  return g;
}

}  // namespace ipstele
