#include "ipstele/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "ipstele/analysis.hpp"
#include "ipstele/ips.hpp"
#include "ipstele/numfmt.hpp"
#include "ipstele/optics.hpp"
#include "ipstele/reference.hpp"
#include "ipstele/teleport.hpp"
#include "ipstele/thresholds.hpp"

namespace ipstele {

namespace {

class Recorder {
 public:
  explicit Recorder(const VerifyOptions& o) : opts_(o) {}

  void check(const std::string& name, double value, double reference, double tolerance) {
    const double tol = opts_.tolerance.value_or(tolerance);
    checks_.push_back({name, value, reference, tol, std::abs(value - reference) <= tol});
  }

  std::vector<VerifyCheck> take() { return std::move(checks_); }

 private:
  const VerifyOptions& opts_;
  std::vector<VerifyCheck> checks_;
};

std::string label(const std::string& what, std::initializer_list<std::pair<const char*, double>> params) {
  std::ostringstream s;
  s << what << '(';
  bool first = true;
  for (const auto& [k, v] : params) {
    s << (first ? "" : ",") << k << '=' << format_number(v, 6);
    first = false;
  }
  s << ')';
  return s.str();
}

double max_entry_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<VerifyCheck> run_verify(const VerifyOptions& options) {
  Recorder rec(options);
  const bool dense = options.dense;

  // Click probability and conditional state, both routes.
  const std::vector<double> xs = dense ? std::vector<double>{0.1, 0.3, 0.5} : std::vector<double>{0.1, 0.5};
  const std::vector<double> taus = dense ? std::vector<double>{0.7, 0.9} : std::vector<double>{0.9};
  const std::vector<double> etas = {0.5, 1.0};
  for (double x : xs) {
    for (double tau : taus) {
      for (double eta : etas) {
        const IpsParams p(x, tau, eta);
        const TruncationConfig trunc = ips_truncation(p);
        const double closed = p11_closed(p);
        rec.check(label("p11_numeric", {{"x", x}, {"tau", tau}, {"eta", eta}}), p11_numerical(p, trunc), closed, 1e-8);
        rec.check(label("p11_effective_identity", {{"x", x}, {"tau", tau}, {"eta", eta}}),
                  p11_effective(x, p.tau_eff()), closed, 1e-14);
        const DensityOperator direct = ips_state_direct(p, trunc);
        const DensityOperator simulated = ips_state_simulated(p, trunc);
        rec.check(label("ips_state_direct_vs_simulated", {{"x", x}, {"tau", tau}, {"eta", eta}}),
                  max_entry_diff(direct.matrix(), simulated.matrix()), 0.0, 1e-10);
        const ValidationReport v = validate(direct);
        rec.check(label("ips_state_min_eigenvalue", {{"x", x}, {"tau", tau}, {"eta", eta}}),
                  std::min(0.0, v.min_eigenvalue), 0.0, 1e-10);

        // Finite efficiency equals ideal detection at tau_eff followed by
        // loss tau / tau_eff on both arms.
        const DensityOperator ideal = ips_state_direct(IpsParams::effective(x, p.tau_eff()), trunc);
        const std::vector<int> both = {0, 1};
        const DensityOperator lossy = apply_loss(ideal, tau / p.tau_eff(), both);
        rec.check(label("ips_state_loss_identity", {{"x", x}, {"tau", tau}, {"eta", eta}}),
                  max_entry_diff(direct.matrix(), lossy.matrix()), 0.0, 1e-10);

        const IpsMoments m = ips_moments(p);
        const CorrelationReport dense_report = correlation_report(direct);
        rec.check(label("photons_moments_vs_dense", {{"x", x}, {"tau", tau}, {"eta", eta}}),
                  m.mean_a + m.mean_b, dense_report.mean_a + dense_report.mean_b, 1e-8);
        rec.check(label("delta_moments_vs_dense", {{"x", x}, {"tau", tau}, {"eta", eta}}),
                  correlation_report(m).delta_ab, dense_report.delta_ab, 1e-8);
        const IpsMoments ms = reference::ips_moments(p, ips_cutoff(p));
        rec.check(label("moments_parallel_vs_serial", {{"x", x}, {"tau", tau}, {"eta", eta}}), m.var_diff,
                  ms.var_diff, 1e-12);
      }
    }
  }

  // Difference-number squeezing against the closed form (ideal detectors).
  for (double x : xs) {
    for (double t : {0.7, 0.9, 0.999}) {
      const IpsMoments m = ips_moments(IpsParams::effective(x, t));
      rec.check(label("delta_ab_closed", {{"x", x}, {"tau_eff", t}}), correlation_report(m).delta_ab,
                difference_squeezing_closed(x, t), 1e-8);
    }
  }

  // POVM completeness.
  for (double eta : etas) {
    const auto povm = product_povm(eta, TruncationConfig({12, 12}));
    const CVector sum = povm[0].diag() + povm[1].diag() + povm[2].diag() + povm[3].diag();
    rec.check(label("povm_completeness", {{"eta", eta}}), (sum.array() - 1.0).abs().maxCoeff(), 0.0, 1e-15);
  }

  // Teleportation: quadrature pipeline against the closed forms.
  const std::vector<double> fx = dense ? std::vector<double>{0.1, 0.3, 0.5} : std::vector<double>{0.3};
  const std::vector<double> ft = dense ? std::vector<double>{0.5, 0.8, 0.9, 0.99} : std::vector<double>{0.9};
  for (double x : fx) {
    for (double t : ft) {
      const IpsParams p = IpsParams::effective(x, t);
      const DensityOperator rho = ips_state_simulated(p, ips_truncation(p));
      const TeleportIntegral in = integrate_teleportation(rho, 0.0, default_grid(rho, 0.0));
      rec.check(label("avg_fidelity_quadrature", {{"x", x}, {"tau_eff", t}}), in.fidelity,
                average_fidelity_closed(x, t), 1e-4);
      rec.check(label("outcome_normalization", {{"x", x}, {"tau_eff", t}}), in.normalization, 1.0, 1e-4);
    }
  }
  {
    const IpsParams p = IpsParams::effective(0.5, 0.9);
    const DensityOperator rho = ips_state_direct(p, ips_truncation(p));
    const Complex alpha(1.0, 0.5);
    rec.check("avg_fidelity_alpha_invariance(x=0.5,tau_eff=0.9)", average_fidelity_quadrature(rho, alpha),
              average_fidelity_quadrature(rho, 0.0), 2e-4);
  }
  for (double x : dense ? std::vector<double>{0.2, 0.4, 0.6} : std::vector<double>{0.4}) {
    const DensityOperator rho = DensityOperator::from_pure(twb_state(TwbSpec(x)));
    rec.check(label("twb_fidelity_quadrature", {{"x", x}}), average_fidelity_quadrature(rho, 0.0),
              twb_average_fidelity(x), 1e-4);
  }
  {
    // The node kernel against the node-by-node serial route on a coarse rule.
    const IpsParams p = IpsParams::effective(0.3, 0.9);
    const DensityOperator rho = ips_state_direct(p, ips_truncation(p));
    QuadratureGrid g = default_grid(rho, 0.0, 16, 24);
    const double par = integrate_teleportation(rho, 0.0, g).fidelity;
    const double ser = reference::integrate_teleportation(rho, 0.0, g).fidelity;
    rec.check("quadrature_kernel_vs_serial(x=0.3,tau_eff=0.9)", par, ser, 1e-10);
  }

  // Threshold roots.
  for (double t : dense ? std::vector<double>{0.6, 0.8, 0.9, 0.95, 0.999} : std::vector<double>{0.9}) {
    if (const auto th = x_threshold(t)) {
      rec.check(label("x_th_root", {{"tau_eff", t}}), improvement_gap(*th, t), 0.0, 1e-9);
    } else {
      rec.check(label("x_th_exists", {{"tau_eff", t}}), 0.0, 1.0, 0.0);
    }
    if (const auto s = x_two_thirds(t)) {
      rec.check(label("x_23_root", {{"tau_eff", t}}), average_fidelity_closed(*s, t), 2.0 / 3.0, 1e-9);
    }
  }
  return rec.take();
}

bool print_report(const std::vector<VerifyCheck>& checks, std::ostream& out, int precision) {
  bool ok = true;
  for (const VerifyCheck& c : checks) {
    ok = ok && c.pass;
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << format_number(c.value, precision)
        << " reference=" << format_number(c.reference, precision)
        << " |diff|=" << format_number(std::abs(c.value - c.reference), 3)
        << " tol=" << format_number(c.tolerance, 3) << '\n';
  }
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const VerifyCheck& c) { return !c.pass; });
  out << (ok ? "verify: all " : "verify: ") << (ok ? std::to_string(checks.size()) + " checks passed"
                                                   : std::to_string(failed) + " of " + std::to_string(checks.size()) +
                                                         " checks failed")
      << '\n';
  return ok;
}

}  // namespace ipstele
