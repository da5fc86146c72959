// ipstele: closed forms, Fock-space checks and sweeps for teleportation with
// photon-subtracted twin beams.
//
//   ipstele eval p11 --x 0.5 --tau-eff 0.8
//   ipstele eval avg-fidelity --x 0.5 --tau 0.9 --eta 1 --numeric
//   ipstele sweep fig4 --format csv --out fig4.csv
//   ipstele sweep delta-ab --x 0.1:0.9:0.1 --tau 0.9 --eta 0.5,1 --numeric
//   ipstele verify --grid dense

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"

#include "ipstele/analysis.hpp"
#include "ipstele/errors.hpp"
#include "ipstele/ips.hpp"
#include "ipstele/numfmt.hpp"
#include "ipstele/optics.hpp"
#include "ipstele/sweep.hpp"
#include "ipstele/teleport.hpp"
#include "ipstele/thresholds.hpp"
#include "ipstele/verify.hpp"

using namespace ipstele;

namespace {

struct EvalArgs {
  std::string quantity;
  std::optional<double> x, tau, eta, tau_eff;
  double alpha_re = 0.0, alpha_im = 0.0;
  std::optional<int> dim;
  double tail_tol = TruncationConfig::kDefaultTailTol;
  int quad_radial = 40, quad_angular = 64;
  bool numeric = false;
};

struct SweepArgs {
  std::string target;
  std::optional<std::string> x, tau, eta, tau_eff;
  double alpha_re = 0.0, alpha_im = 0.0;
  std::optional<int> dim;
  double tail_tol = TruncationConfig::kDefaultTailTol;
  int quad_radial = 40, quad_angular = 64;
  bool numeric = false;
  std::string format = "csv";
  std::optional<std::string> out;
};

struct VerifyArgs {
  std::string grid = "small";
  std::optional<double> tolerance;
};

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw DomainError(std::string("missing ") + flag);
  return *v;
}

// (tau, eta) from either --tau [--eta] or --tau-eff.
std::pair<double, double> knobs(const EvalArgs& a) {
  if (a.tau_eff) return {*a.tau_eff, 1.0};
  if (a.tau) return {*a.tau, a.eta.value_or(1.0)};
  throw DomainError("one of --tau or --tau-eff is required");
}

double tau_eff_of(const EvalArgs& a) {
  const auto [tau, eta] = knobs(a);
  const double t = effective_transmissivity(tau, eta);
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("tau_eff must lie in (0, 1]");
  return t;
}

TruncationConfig pair_trunc(const EvalArgs& a, const IpsParams& p) {
  const int d = a.dim ? *a.dim : p.can_condition() ? ips_cutoff(p, a.tail_tol) : twb_cutoff(p.x(), a.tail_tol);
  return TruncationConfig({d, d}, a.tail_tol);
}

double quadrature(const EvalArgs& a, const DensityOperator& rho) {
  const Complex alpha(a.alpha_re, a.alpha_im);
  return average_fidelity_quadrature(rho, alpha, default_grid(rho, alpha, a.quad_radial, a.quad_angular));
}

void print_pair(double closed, std::optional<double> numeric, int precision) {
  if (!numeric) {
    std::cout << format_number(closed, precision) << '\n';
    return;
  }
  std::cout << "closed " << format_number(closed, precision) << '\n'
            << "numeric " << format_number(*numeric, precision) << '\n'
            << "abs_dev " << format_number(std::abs(*numeric - closed), 3) << '\n';
}

void print_optional(const std::optional<double>& v, int precision) {
  std::cout << (v ? format_number(*v, precision) : std::string("none")) << '\n';
}

int run_eval(const EvalArgs& a, int precision) {
  const std::string q = a.quantity;
  if (q == "twb-fidelity") {
    const double x = need(a.x, "--x");
    std::optional<double> num;
    if (a.numeric) {
      const TwbSpec s(x);
      const int d = a.dim.value_or(twb_cutoff(x, a.tail_tol));
      num = quadrature(a, DensityOperator::from_pure(twb_state(s, TruncationConfig({d, d}, a.tail_tol))));
    }
    print_pair(twb_average_fidelity(x), num, precision);
  } else if (q == "entanglement") {
    std::cout << format_number(twb_entanglement(need(a.x, "--x")), precision) << '\n';
  } else if (q == "avg-fidelity") {
    const double x = need(a.x, "--x");
    const double t = tau_eff_of(a);
    std::optional<double> num;
    if (a.numeric) {
      const auto [tau, eta] = knobs(a);
      const IpsParams p(x, tau, eta);
      num = quadrature(a, ips_state_direct(p, pair_trunc(a, p)));
    }
    print_pair(average_fidelity_closed(x, t), num, precision);
  } else if (q == "p11") {
    const auto [tau, eta] = knobs(a);
    const IpsParams p(need(a.x, "--x"), tau, eta);
    std::optional<double> num;
    if (a.numeric) num = p11_numerical(p, pair_trunc(a, p));
    print_pair(p11_closed(p), num, precision);
  } else if (q == "mean-photons") {
    const auto [tau, eta] = knobs(a);
    const IpsParams p(need(a.x, "--x"), tau, eta);
    double ips = 0.0;
    if (p.can_condition()) {
      const IpsMoments m = a.dim ? ips_moments(p, *a.dim) : ips_moments(p, a.tail_tol);
      ips = m.mean_a + m.mean_b;
    } else {
      ips = subtracted_twb_mean_photons(p.x());
    }
    std::cout << "twb " << format_number(twb_mean_photons(p.x()), precision) << '\n'
              << "ips " << format_number(ips, precision) << '\n';
  } else if (q == "delta-ab") {
    const auto [tau, eta] = knobs(a);
    const IpsParams p(need(a.x, "--x"), tau, eta);
    std::optional<double> num;
    if (a.numeric) {
      const IpsMoments m = a.dim ? ips_moments(p, *a.dim) : ips_moments(p, a.tail_tol);
      num = correlation_report(m).delta_ab;
    }
    print_pair(difference_squeezing_closed(p.x(), p.tau_eff()), num, precision);
  } else if (q == "x-th") {
    print_optional(x_threshold(tau_eff_of(a)), precision);
  } else if (q == "x-23") {
    print_optional(x_two_thirds(tau_eff_of(a)), precision);
  } else if (q == "secure-window") {
    const auto w = secure_window(tau_eff_of(a));
    if (w) {
      std::cout << format_number(w->first, precision) << ' ' << format_number(w->second, precision) << '\n';
    } else {
      std::cout << "none\n";
    }
  } else {
    throw DomainError("unknown quantity '" + q + "'");
  }
  return 0;
}

int run_sweep_cmd(const SweepArgs& a, int precision, int jobs) {
  SweepSpec spec;
  if (a.target.rfind("fig", 0) == 0) {
    spec = preset_spec(a.target);
  } else {
    const auto q = parse_quantity(a.target);
    if (!q) throw DomainError("unknown sweep '" + a.target + "'");
    spec.quantity = *q;
  }
  if (a.x) spec.x = parse_grid(*a.x);
  if (a.tau_eff) {
    spec.tau_eff = parse_grid(*a.tau_eff);
    spec.tau.clear();
    spec.eta.clear();
  }
  if (a.tau) {
    spec.tau = parse_grid(*a.tau);
    spec.tau_eff.clear();
  }
  if (a.eta) spec.eta = parse_grid(*a.eta);
  if (!spec.preset.empty() && (a.tau || a.eta)) {
    throw DomainError("figure presets take --tau-eff, not --tau/--eta");
  }
  spec.alpha = Complex(a.alpha_re, a.alpha_im);
  spec.dim = a.dim;
  spec.tail_tol = a.tail_tol;
  spec.quad_radial = a.quad_radial;
  spec.quad_angular = a.quad_angular;
  spec.numeric = a.numeric;
  spec.jobs = jobs;

  const SweepResult r = run_sweep(spec);
  std::ofstream file;
  if (a.out) {
    file.open(*a.out);
    if (!file) throw std::runtime_error("cannot write '" + *a.out + "'");
  }
  std::ostream& out = a.out ? static_cast<std::ostream&>(file) : std::cout;
  if (a.format == "json") {
    r.write_json(out, precision);
  } else {
    r.write_csv(out, precision);
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed");
  for (const ColumnCheck& c : r.checks) {
    if (!c.pass) std::cerr << "warning: " << c.numeric << " deviates from " << c.closed << " by " << c.max_abs_dev << '\n';
  }
  return r.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation with inconclusively photon-subtracted twin beams"};
  app.set_version_flag("--version", std::string("ipstele ") + IPSTELE_VERSION);
  app.require_subcommand(1);
  int precision = 12;
  int jobs = 0;
  app.add_option("--precision", precision, "significant digits")->check(CLI::Range(1, 17));
  app.add_option("--jobs", jobs, "worker threads (0: all)")->check(CLI::NonNegativeNumber);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate one quantity at one point");
  eval->add_option("quantity", ev.quantity,
                   "p11 | avg-fidelity | twb-fidelity | mean-photons | delta-ab | entanglement | x-th | x-23 | "
                   "secure-window")
      ->required();
  eval->add_option("--x", ev.x, "twin-beam parameter");
  auto* etau = eval->add_option("--tau", ev.tau, "beam-splitter transmissivity");
  auto* eeta = eval->add_option("--eta", ev.eta, "detector efficiency (default 1)");
  auto* eteff = eval->add_option("--tau-eff", ev.tau_eff, "effective transmissivity");
  eteff->excludes(etau)->excludes(eeta);
  eeta->needs(etau);
  eval->add_option("--alpha-re", ev.alpha_re);
  eval->add_option("--alpha-im", ev.alpha_im);
  eval->add_option("--dim", ev.dim, "per-mode Fock cutoff (default: from --tail-tol)")->check(CLI::PositiveNumber);
  eval->add_option("--tail-tol", ev.tail_tol, "neglected probability mass");
  eval->add_option("--quad-radial", ev.quad_radial)->check(CLI::PositiveNumber);
  eval->add_option("--quad-angular", ev.quad_angular)->check(CLI::PositiveNumber);
  eval->add_flag("--numeric", ev.numeric, "also compute in Fock space");
  eval->add_option("--precision", precision, "significant digits")->check(CLI::Range(1, 17));
  eval->add_option("--jobs", jobs)->check(CLI::NonNegativeNumber);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "tabulate a quantity or a figure preset");
  sweep->add_option("target", sw.target,
                    "fig2 | fig3 | fig4 | fig5 | p11 | avg-fidelity | mean-photons | delta-ab | x-th | x-23 | "
                    "secure-window")
      ->required();
  sweep->add_option("--x", sw.x, "list a,b,c or range lo:hi:step");
  auto* stau = sweep->add_option("--tau", sw.tau, "list or range");
  auto* seta = sweep->add_option("--eta", sw.eta, "list or range (default 1)");
  auto* steff = sweep->add_option("--tau-eff", sw.tau_eff, "list or range");
  steff->excludes(stau)->excludes(seta);
  seta->needs(stau);
  sweep->add_option("--alpha-re", sw.alpha_re);
  sweep->add_option("--alpha-im", sw.alpha_im);
  sweep->add_option("--dim", sw.dim)->check(CLI::PositiveNumber);
  sweep->add_option("--tail-tol", sw.tail_tol);
  sweep->add_option("--quad-radial", sw.quad_radial)->check(CLI::PositiveNumber);
  sweep->add_option("--quad-angular", sw.quad_angular)->check(CLI::PositiveNumber);
  sweep->add_flag("--numeric", sw.numeric, "add Fock-space columns and deviation checks");
  sweep->add_option("--format", sw.format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", sw.out, "output path (default stdout)");
  sweep->add_option("--precision", precision, "significant digits")->check(CLI::Range(1, 17));
  sweep->add_option("--jobs", jobs)->check(CLI::NonNegativeNumber);

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "run the oracle checks");
  verify->add_option("--grid", vf.grid)->check(CLI::IsMember({"small", "dense"}));
  verify->add_option("--tolerance", vf.tolerance, "replace every tolerance (harness sanity check)");
  verify->add_option("--precision", precision, "significant digits")->check(CLI::Range(1, 17));
  verify->add_option("--jobs", jobs)->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);
  if (jobs > 0) omp_set_num_threads(jobs);

  try {
    if (*eval) return run_eval(ev, precision);
    if (*sweep) return run_sweep_cmd(sw, precision, jobs);
    VerifyOptions opts;
    opts.dense = vf.grid == "dense";
    opts.tolerance = vf.tolerance;
    return print_report(run_verify(opts), std::cout, precision) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
