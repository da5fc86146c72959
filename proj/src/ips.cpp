#include "ipstele/ips.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ipstele/binomial.hpp"
#include "ipstele/errors.hpp"
#include "ipstele/optics.hpp"
#include "ipstele/summation.hpp"

namespace ipstele {

namespace {

// Probability that an ON/OFF detector of efficiency eta fires on h photons.
double click_weight(int h, double eta) {
  if (h == 0) return 0.0;
  if (eta >= 1.0) return 1.0;
  return -std::expm1(h * std::log1p(-eta));
}

int pair_cutoff(const TruncationConfig& trunc) {
  if (trunc.modes() != 2 || trunc.dim(0) != trunc.dim(1)) {
    throw DimensionError("IPS: expected a two-mode (a, b) truncation with equal cutoffs");
  }
  return trunc.dim(0);
}

void require_conditioning(const IpsParams& p) {
  if (!p.can_condition()) {
    throw ConditioningError("IPS: tau_eff = 1, the detectors can never click (p11 = 0)");
  }
}

void require_conditional_tail(const IpsParams& p, const TruncationConfig& trunc) {
  const int d = pair_cutoff(trunc);
  const double bound = std::pow(p.x(), 2.0 * d);
  const double p11 = p11_closed(p);
  if (bound > trunc.tail_tol() * p11) {
    throw TruncationError("IPS: cutoff " + std::to_string(d) + " leaves conditional tail " +
                          std::to_string(bound / p11) + " > tail_tol; need cutoff " +
                          std::to_string(ips_cutoff(p, trunc.tail_tol())));
  }
}

}  // namespace

IpsParams::IpsParams(double x, double tau, double eta) : x_(x), tau_(tau), eta_(eta) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("IPS: x must lie in (0, 1), got " + std::to_string(x));
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw DomainError("IPS: tau must lie in (0, 1], got " + std::to_string(tau));
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("IPS: eta must lie in (0, 1], got " + std::to_string(eta));
  }
}

double IpsParams::tau_eff() const { return effective_transmissivity(tau_, eta_); }

double effective_transmissivity(double tau, double eta) { return 1.0 - eta * (1.0 - tau); }

std::pair<FockOperator, FockOperator> on_off_povm(double eta, const TruncationConfig& trunc) {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("ON/OFF POVM: eta must lie in (0, 1]");
  if (trunc.modes() != 1) throw DimensionError("ON/OFF POVM: single-mode truncation required");
  const int d = trunc.dim(0);
  CVector off(d), on(d);
  for (int j = 0; j < d; ++j) {
    on(j) = click_weight(j, eta);
    off(j) = 1.0 - on(j).real();
  }
  return {FockOperator::diagonal(trunc, std::move(off)), FockOperator::diagonal(trunc, std::move(on))};
}

std::array<FockOperator, 4> product_povm(double eta, const TruncationConfig& trunc) {
  if (trunc.modes() != 2) throw DimensionError("product POVM: two-mode truncation required");
  const auto [off_c, on_c] = on_off_povm(eta, trunc.select(std::vector<int>{0}));
  const auto [off_d, on_d] = on_off_povm(eta, trunc.select(std::vector<int>{1}));
  return {kron(off_c, off_d), kron(off_c, on_d), kron(on_c, off_d), kron(on_c, on_d)};
}

FockOperator product_povm_11(double eta, const TruncationConfig& trunc) {
  return product_povm(eta, trunc)[3];
}

double f_hk(int h, int k, double tau, double eta) {
  const double r = (1.0 - tau) / tau;
  return click_weight(h, eta) * click_weight(k, eta) * std::pow(r, h + k);
}

double p11_closed(const IpsParams& p) {
  const double x2 = p.x() * p.x();
  const double eta = p.eta();
  const double tau = p.tau();
  const double s = 1.0 - eta * (1.0 - tau);
  return x2 * eta * eta * (1.0 - tau) * (1.0 - tau) * (1.0 + x2 * s) /
         ((1.0 - x2 * s) * (1.0 - x2 * s * s));
}

double p11_effective(double x, double tau_eff) {
  const double x2 = x * x;
  const double r = 1.0 - tau_eff;
  return x2 * r * r * (1.0 + x2 * tau_eff) / ((1.0 - x2 * tau_eff) * (1.0 - x2 * tau_eff * tau_eff));
}

int ips_cutoff(const IpsParams& params, double tail_tol) {
  require_conditioning(params);
  return std::max(twb_cutoff(params.x(), tail_tol), twb_cutoff(params.x(), tail_tol * p11_closed(params)));
}

TruncationConfig ips_truncation(const IpsParams& params, double tail_tol) {
  const int d = ips_cutoff(params, tail_tol);
  return TruncationConfig({d, d}, tail_tol);
}

double p11_numerical(const IpsParams& params, const TruncationConfig& trunc) {
  const int d = pair_cutoff(trunc);
  const TruncationConfig four({d, d, d, d}, trunc.tail_tol());
  const PureState psi = post_bs_state(TwbSpec(params.x()), BeamSplitterSpec(params.tau()), four);
  const FockOperator pi11 = product_povm_11(params.eta(), TruncationConfig({d, d}, trunc.tail_tol()));
  const Index dd = static_cast<Index>(d) * d;
  std::vector<double> terms(static_cast<std::size_t>(psi.amps().size()));
  for (Index i = 0; i < psi.amps().size(); ++i) {
    terms[static_cast<std::size_t>(i)] = std::norm(psi.amps()(i)) * pi11.diag()(i % dd).real();
  }
  return pairwise_sum(std::span<const double>(terms));
}

DensityOperator ips_state_simulated(const IpsParams& params, const TruncationConfig& trunc) {
  require_conditioning(params);
  require_conditional_tail(params, trunc);
  const int d = pair_cutoff(trunc);
  const TruncationConfig four({d, d, d, d}, trunc.tail_tol());
  const PureState psi = post_bs_state(TwbSpec(params.x()), BeamSplitterSpec(params.tau()), four);
  const FockOperator pi11 = product_povm_11(params.eta(), TruncationConfig({d, d}, trunc.tail_tol()));
  const std::vector<int> keep = {0, 1};
  return reduce_pure(psi, keep, &pi11).normalized();
}

DensityOperator ips_state_direct(const IpsParams& params, const TruncationConfig& trunc) {
  require_conditioning(params);
  require_conditional_tail(params, trunc);
  const int d = pair_cutoff(trunc);
  const double x = params.x();
  const double tau = params.tau();

  // amp(n, h) = sqrt(C(n,h) tau^(n-h) (1-tau)^h); xn(n) = x^n
  Eigen::MatrixXd amp = Eigen::MatrixXd::Zero(d, d);
  std::vector<double> click(static_cast<std::size_t>(d)), xn(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) {
    xn[static_cast<std::size_t>(n)] = std::pow(x, n);
    click[static_cast<std::size_t>(n)] = click_weight(n, params.eta());
    for (int h = 0; h <= n; ++h) amp(n, h) = binomial_amplitude(n, h, tau);
  }

  // Reflecting h photons from a and k from b maps |n, n> to |n-h, n-k>.
  CMatrix rho = CMatrix::Zero(static_cast<Index>(d) * d, static_cast<Index>(d) * d);
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      const double xnm = xn[static_cast<std::size_t>(n)] * xn[static_cast<std::size_t>(m)];
      const int top = std::min(n, m);
      for (int h = 1; h <= top; ++h) {
        const double wh = click[static_cast<std::size_t>(h)] * amp(n, h) * amp(m, h);
        for (int k = 1; k <= top; ++k) {
          const double w = xnm * wh * click[static_cast<std::size_t>(k)] * amp(n, k) * amp(m, k);
          rho(static_cast<Index>(n - h) * d + (n - k), static_cast<Index>(m - h) * d + (m - k)) += w;
        }
      }
    }
  }
  // The common factor (1 - x^2) / p11 is fixed by normalization.
  return DensityOperator(trunc, std::move(rho)).normalized();
}

namespace {

struct ClickSums {
  double a = 0.0;  // sum_h w_h
  double b = 0.0;  // sum_h w_h h
  double c = 0.0;  // sum_h w_h h^2
};

// w_h = click(h) * C(n,h) tau^(n-h) (1-tau)^h, accumulated outward from the
// mode of the binomial so large n neither underflows nor costs O(n).
ClickSums click_sums(int n, double tau, double eta) {
  ClickSums s;
  if (n == 0) return s;
  if (tau >= 1.0) return s;
  const double odds = (1.0 - tau) / tau;
  const int mode = std::clamp(static_cast<int>(std::floor((n + 1) * (1.0 - tau))), 0, n);
  const double peak = binomial_pmf(n, mode, tau);
  auto add = [&](int h, double pmf) {
    const double w = click_weight(h, eta) * pmf;
    s.a += w;
    s.b += w * h;
    s.c += w * static_cast<double>(h) * h;
  };
  add(mode, peak);
  double pmf = peak;
  for (int h = mode + 1; h <= n; ++h) {
    pmf *= odds * static_cast<double>(n - h + 1) / h;
    if (pmf < 1e-22 * peak) break;
    add(h, pmf);
  }
  pmf = peak;
  for (int h = mode - 1; h >= 1; --h) {
    pmf *= static_cast<double>(h + 1) / (odds * (n - h));
    if (pmf < 1e-22 * peak) break;
    add(h, pmf);
  }
  return s;
}

}  // namespace

IpsMoments ips_moments(const IpsParams& params, int dim) {
  require_conditioning(params);
  if (dim < 1) throw DomainError("ips_moments: cutoff must be >= 1");
  const double log_x2 = 2.0 * std::log(params.x());
  const std::size_t count = static_cast<std::size_t>(dim);
  std::vector<double> z(count), sa(count), var(count);

#pragma omp parallel for schedule(dynamic, 16)
  for (int n = 0; n < dim; ++n) {
    const ClickSums s = click_sums(n, params.tau(), params.eta());
    const double xw = std::exp(n * log_x2);
    const auto i = static_cast<std::size_t>(n);
    z[i] = xw * s.a * s.a;
    sa[i] = xw * (n * s.a - s.b) * s.a;
    var[i] = xw * 2.0 * (s.c * s.a - s.b * s.b);
  }

  const double zt = pairwise_sum(std::span<const double>(z));
  IpsMoments m;
  m.weight = (1.0 - params.x() * params.x()) * zt;
  m.mean_a = pairwise_sum(std::span<const double>(sa)) / zt;
  m.mean_b = m.mean_a;  // the click weights are the same on both arms
  m.var_diff = pairwise_sum(std::span<const double>(var)) / zt;
  return m;
}

IpsMoments ips_moments(const IpsParams& params, double tail_tol) {
  return ips_moments(params, ips_cutoff(params, tail_tol));
}

}  // namespace ipstele
