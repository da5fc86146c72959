#include "ipstele/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ipstele/binomial.hpp"
#include "ipstele/errors.hpp"

namespace ipstele {

BeamSplitterSpec::BeamSplitterSpec(double tau) : tau_(tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw DomainError("beam splitter: transmissivity must lie in (0, 1], got " + std::to_string(tau));
  }
}

double BeamSplitterSpec::lambda() const { return std::atan(std::sqrt((1.0 - tau_) / tau_)); }

TwbSpec::TwbSpec(double x) : x_(x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("twin beam: parameter x must lie in (0, 1), got " + std::to_string(x));
  }
}

double TwbSpec::gain() const { return std::atanh(x_); }

int twb_cutoff(double x, double tail_tol) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("twb_cutoff: x must lie in (0, 1)");
  int d = std::max(1, static_cast<int>(std::ceil(std::log(tail_tol) / (2.0 * std::log(x)))));
  while (std::pow(x, 2.0 * d) > tail_tol) ++d;
  while (d > 1 && std::pow(x, 2.0 * (d - 1)) <= tail_tol) --d;
  return d;
}

int coherent_cutoff(Complex alpha, double tail_tol) {
  const double r2 = std::norm(alpha);
  double term = std::exp(-r2);  // |<n|alpha>|^2 at n = 0
  double mass = term;
  int d = 1;
  while (1.0 - mass > tail_tol) {
    term *= r2 / d;
    mass += term;
    ++d;
    if (d > 100000) throw TruncationError("coherent_cutoff: amplitude too large");
  }
  return d;
}

PureState twb_state(const TwbSpec& spec, const TruncationConfig& trunc) {
  if (trunc.modes() != 2) throw DimensionError("twb_state: two-mode truncation required");
  const int d = std::min(trunc.dim(0), trunc.dim(1));
  const double x = spec.x();
  const double neglected = std::pow(x, 2.0 * d);
  if (neglected > trunc.tail_tol()) {
    throw TruncationError("twb_state: mass beyond cutoff " + std::to_string(d) + " is " +
                          std::to_string(neglected) + " > tail_tol; need cutoff " +
                          std::to_string(twb_cutoff(x, trunc.tail_tol())));
  }
  CVector amps = CVector::Zero(trunc.total_dim());
  const double c = std::sqrt(1.0 - x * x);
  double xn = 1.0;
  for (int n = 0; n < d; ++n) {
    amps(trunc.flat_index({n, n})) = c * xn;
    xn *= x;
  }
  return PureState(trunc, std::move(amps)).normalized();
}

PureState twb_state(const TwbSpec& spec, double tail_tol) {
  const int d = twb_cutoff(spec.x(), tail_tol);
  return twb_state(spec, TruncationConfig({d, d}, tail_tol));
}

CVector coherent_amplitudes(Complex alpha, int dim) {
  CVector c(dim);
  Complex v = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < dim; ++n) {
    if (n > 0) v *= alpha / std::sqrt(static_cast<double>(n));
    c(n) = v;
  }
  return c;
}

PureState coherent_state(Complex alpha, const TruncationConfig& trunc) {
  if (trunc.modes() != 1) throw DimensionError("coherent_state: single-mode truncation required");
  CVector c = coherent_amplitudes(alpha, trunc.dim(0));
  const double tail = 1.0 - c.squaredNorm();
  if (tail > trunc.tail_tol()) {
    throw TruncationError("coherent_state: tail mass " + std::to_string(tail) + " beyond cutoff " +
                          std::to_string(trunc.dim(0)) + " exceeds tail_tol");
  }
  return PureState(trunc, std::move(c)).normalized();
}

FockOperator beam_splitter_unitary(const BeamSplitterSpec& spec, const TruncationConfig& trunc) {
  if (trunc.modes() != 2) throw DimensionError("beam splitter: two-mode truncation required");
  const int da = trunc.dim(0);
  const int dc = trunc.dim(1);
  const double lambda = spec.lambda();
  CMatrix u = CMatrix::Zero(trunc.total_dim(), trunc.total_dim());

  // The generator lambda (a c^dag - a^dag c) conserves n_a + n_c; exponentiate
  // each sector on its own.
  for (int total = 0; total <= da + dc - 2; ++total) {
    const int lo = std::max(0, total - (dc - 1));
    const int hi = std::min(total, da - 1);
    const int size = hi - lo + 1;
    std::vector<Index> flat(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) {
      const int na = lo + k;
      flat[static_cast<std::size_t>(k)] = static_cast<Index>(na) * dc + (total - na);
    }
    if (lambda == 0.0) {
      for (Index f : flat) u(f, f) = 1.0;
      continue;
    }
    // gen(k-1, k) = <na-1, nc+1| a c^dag |na, nc> with na = lo + k.
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(size, size);
    for (int k = 1; k < size; ++k) {
      const int na = lo + k;
      const int nc = total - na;
      const double amp = lambda * std::sqrt(static_cast<double>(na) * (nc + 1));
      gen(k - 1, k) = amp;
      gen(k, k - 1) = -amp;
    }
    // exp(G) = V exp(-i w) V^dag with (i G) = V w V^dag Hermitian.
    const CMatrix h = Complex(0.0, 1.0) * gen.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CVector phases(size);
    for (int k = 0; k < size; ++k) phases(k) = std::exp(Complex(0.0, -es.eigenvalues()(k)));
    const CMatrix block = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    for (int r = 0; r < size; ++r) {
      for (int c = 0; c < size; ++c) {
        // The generator is real, so the exact exponential is real.
        u(flat[static_cast<std::size_t>(r)], flat[static_cast<std::size_t>(c)]) = block(r, c).real();
      }
    }
  }
  return FockOperator::dense(trunc, std::move(u));
}

CMatrix displacement_matrix(Complex beta, int rows, int cols) {
  CMatrix d = CMatrix::Zero(rows, cols);
  const double r = std::abs(beta);
  if (r == 0.0) {
    for (int i = 0; i < std::min(rows, cols); ++i) d(i, i) = 1.0;
    return d;
  }
  const double x = r * r;
  const Complex unit = beta / r;
  const double log_r = std::log(r);
  // <m|D|n> = sqrt(n!/m!) beta^(m-n) e^{-x/2} L_n^(m-n)(x) for m >= n and
  // <m|D|n> = sqrt(m!/n!) (-beta*)^(n-m) e^{-x/2} L_m^(n-m)(x) for m < n.
  for (int m = 0; m < rows; ++m) {
    for (int n = 0; n < cols; ++n) {
      const int lo = std::min(m, n);
      const int k = std::abs(m - n);
      const double log_pref =
          0.5 * (log_factorial(lo) - log_factorial(lo + k)) + k * log_r - 0.5 * x;
      const double lag = std::assoc_laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(k), x);
      const Complex phase = m >= n ? std::pow(unit, k) : std::pow(-std::conj(unit), k);
      d(m, n) = std::exp(log_pref) * lag * phase;
    }
  }
  return d;
}

FockOperator displacement_operator(Complex beta, const TruncationConfig& trunc) {
  if (trunc.modes() != 1) throw DimensionError("displacement: single-mode truncation required");
  const int dim = trunc.dim(0);
  const double tail = 1.0 - coherent_amplitudes(beta, dim).squaredNorm();
  if (tail > trunc.tail_tol()) {
    throw TruncationError("displacement: |beta|^2 = " + std::to_string(std::norm(beta)) +
                          " leaves tail mass " + std::to_string(tail) + " beyond cutoff " +
                          std::to_string(dim));
  }
  return FockOperator::dense(trunc, displacement_matrix(beta, dim, dim));
}

namespace {

void require_four_modes(const TruncationConfig& trunc) {
  if (trunc.modes() != 4) throw DimensionError("post-beam-splitter state: four modes (a,b,c,d) required");
}

}  // namespace

PureState post_bs_state(const TwbSpec& twb, const BeamSplitterSpec& bs, const TruncationConfig& trunc) {
  require_four_modes(trunc);
  const double tol = trunc.tail_tol();
  const PureState psi0 = tensor_product({twb_state(twb, trunc.select(std::vector<int>{0, 1})),
                                         PureState::basis(single_mode(trunc.dim(2), tol), {0}),
                                         PureState::basis(single_mode(trunc.dim(3), tol), {0})});
  const FockOperator u_ac = beam_splitter_unitary(bs, TruncationConfig({trunc.dim(0), trunc.dim(2)}, tol));
  const FockOperator u_bd = beam_splitter_unitary(bs, TruncationConfig({trunc.dim(1), trunc.dim(3)}, tol));
  const UnitaryResult after_ac = apply_two_mode_unitary(psi0, u_ac, 0, 2);
  return apply_two_mode_unitary(after_ac.state, u_bd, 1, 3).state;
}

PureState post_bs_state_explicit(const TwbSpec& twb, const BeamSplitterSpec& bs,
                                 const TruncationConfig& trunc) {
  require_four_modes(trunc);
  const double x = twb.x();
  const double tau = bs.tau();
  const int d = std::min(trunc.dim(0), trunc.dim(1));
  if (std::pow(x, 2.0 * d) > trunc.tail_tol()) {
    throw TruncationError("post_bs_state_explicit: twin-beam cutoff too small");
  }
  CVector amps = CVector::Zero(trunc.total_dim());
  const double c = std::sqrt(1.0 - x * x);
  for (int n = 0; n < d; ++n) {
    const double xn = c * std::pow(x, n);
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; q <= n; ++q) {
        if (p >= trunc.dim(2) || q >= trunc.dim(3)) {
          throw TruncationError("post_bs_state_explicit: reflected-mode cutoff too small");
        }
        amps(trunc.flat_index({n - p, n - q, p, q})) =
            xn * binomial_amplitude(n, p, tau) * binomial_amplitude(n, q, tau);
      }
    }
  }
  return PureState(trunc, std::move(amps)).normalized();
}

DensityOperator apply_loss(const DensityOperator& rho, double t, std::span<const int> modes) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("loss: transmissivity must lie in [0, 1]");
  const TruncationConfig& trunc = rho.trunc();
  CMatrix cur = rho.matrix();
  for (int mode : modes) {
    if (mode < 0 || mode >= trunc.modes()) throw DomainError("loss: mode index out of range");
    const int d = trunc.dim(mode);
    Index stride = 1;
    for (int m = trunc.modes() - 1; m > mode; --m) stride *= trunc.dim(m);
    // kraus(n, l) = <n-l| A_l |n> = sqrt(C(n,l) t^(n-l) (1-t)^l)
    Eigen::MatrixXd kraus(d, d);
    for (int n = 0; n < d; ++n) {
      for (int l = 0; l < d; ++l) kraus(n, l) = binomial_amplitude(n, l, t);
    }
    CMatrix next = CMatrix::Zero(cur.rows(), cur.cols());
    const Index total = trunc.total_dim();
    for (Index i = 0; i < total; ++i) {
      const int ni = static_cast<int>((i / stride) % d);
      for (Index j = 0; j < total; ++j) {
        const int nj = static_cast<int>((j / stride) % d);
        Complex acc{};
        for (int l = 0; ni + l < d && nj + l < d; ++l) {
          acc += kraus(ni + l, l) * kraus(nj + l, l) * cur(i + l * stride, j + l * stride);
        }
        next(i, j) = acc;
      }
    }
    cur = std::move(next);
  }
  return DensityOperator(trunc, std::move(cur));
}

}  // namespace ipstele
