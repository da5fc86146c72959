#include "ipstele/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Sparse>

#include "ipstele/errors.hpp"

namespace ipstele {

namespace {

std::string dims_string(const TruncationConfig& t) {
  std::ostringstream os;
  os << '(';
  for (int m = 0; m < t.modes(); ++m) os << (m ? "," : "") << t.dim(m);
  os << ')';
  return os.str();
}

void require_same_space(const TruncationConfig& a, const TruncationConfig& b, const char* what) {
  if (!a.same_space(b)) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + dims_string(a) + " vs " +
                         dims_string(b));
  }
}

// For a split of the modes into `keep` and the rest, the flat joint index of
// (kept multi-index k, traced multi-index t) as table[k * traced_dim + t].
struct ModeSplit {
  TruncationConfig keep_cfg;
  TruncationConfig traced_cfg;
  std::vector<Index> joint;  // size total_dim
};

ModeSplit split_modes(const TruncationConfig& trunc, std::span<const int> keep) {
  if (keep.empty()) throw DomainError("partial trace: keep set is empty");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw DomainError("partial trace: duplicate mode in keep set");
  }
  for (int m : kept) {
    if (m < 0 || m >= trunc.modes()) throw DomainError("partial trace: mode index out of range");
  }
  std::vector<int> traced;
  for (int m = 0; m < trunc.modes(); ++m) {
    if (!std::binary_search(kept.begin(), kept.end(), m)) traced.push_back(m);
  }

  // A mode-free traced space is represented by a single 1-dim dummy mode.
  TruncationConfig keep_cfg = trunc.select(kept);
  TruncationConfig traced_cfg =
      traced.empty() ? TruncationConfig({1}, trunc.tail_tol()) : trunc.select(traced);

  std::vector<Index> joint(static_cast<std::size_t>(trunc.total_dim()));
  std::vector<int> full(static_cast<std::size_t>(trunc.modes()));
  for (Index k = 0; k < keep_cfg.total_dim(); ++k) {
    const auto kidx = keep_cfg.multi_index(k);
    for (std::size_t i = 0; i < kept.size(); ++i) full[static_cast<std::size_t>(kept[i])] = kidx[i];
    for (Index t = 0; t < traced_cfg.total_dim(); ++t) {
      if (!traced.empty()) {
        const auto tidx = traced_cfg.multi_index(t);
        for (std::size_t i = 0; i < traced.size(); ++i) {
          full[static_cast<std::size_t>(traced[i])] = tidx[i];
        }
      }
      joint[static_cast<std::size_t>(k * traced_cfg.total_dim() + t)] = trunc.flat_index(full);
    }
  }
  return {std::move(keep_cfg), std::move(traced_cfg), std::move(joint)};
}

}  // namespace

// ---------------------------------------------------------------------------
// TruncationConfig

TruncationConfig::TruncationConfig(std::vector<int> dims, double tail_tol)
    : dims_(std::move(dims)), tail_tol_(tail_tol), total_(1) {
  if (dims_.empty()) throw DomainError("truncation: at least one mode required");
  for (int d : dims_) {
    if (d < 1) throw DomainError("truncation: every mode dimension must be >= 1");
    total_ *= d;
  }
  if (!(tail_tol_ > 0.0 && tail_tol_ < 1.0)) {
    throw DomainError("truncation: tail_tol must lie in (0, 1)");
  }
}

Index TruncationConfig::flat_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != modes()) {
    throw DimensionError("multi-index has wrong number of modes");
  }
  Index flat = 0;
  for (int m = 0; m < modes(); ++m) {
    const int n = idx[static_cast<std::size_t>(m)];
    if (n < 0 || n >= dims_[static_cast<std::size_t>(m)]) {
      throw DimensionError("Fock index outside truncation");
    }
    flat = flat * dims_[static_cast<std::size_t>(m)] + n;
  }
  return flat;
}

std::vector<int> TruncationConfig::multi_index(Index flat) const {
  std::vector<int> idx(dims_.size());
  for (int m = modes() - 1; m >= 0; --m) {
    const int d = dims_[static_cast<std::size_t>(m)];
    idx[static_cast<std::size_t>(m)] = static_cast<int>(flat % d);
    flat /= d;
  }
  return idx;
}

TruncationConfig TruncationConfig::select(std::span<const int> modes) const {
  std::vector<int> d;
  d.reserve(modes.size());
  for (int m : modes) d.push_back(dim(m));
  return TruncationConfig(std::move(d), tail_tol_);
}

TruncationConfig TruncationConfig::concat(const TruncationConfig& other) const {
  std::vector<int> d = dims_;
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return TruncationConfig(std::move(d), std::min(tail_tol_, other.tail_tol_));
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(TruncationConfig trunc, CVector amps)
    : trunc_(std::move(trunc)), amps_(std::move(amps)) {
  if (amps_.size() != trunc_.total_dim()) {
    throw DimensionError("pure state: amplitude count does not match truncation");
  }
}

PureState PureState::basis(const TruncationConfig& trunc, std::span<const int> idx) {
  CVector amps = CVector::Zero(trunc.total_dim());
  amps(trunc.flat_index(idx)) = 1.0;
  return PureState(trunc, std::move(amps));
}

PureState PureState::normalized() const {
  const double n = amps_.norm();
  if (!(n > 0.0)) throw DomainError("pure state: cannot normalize the zero vector");
  return PureState(trunc_, amps_ / n);
}

// ---------------------------------------------------------------------------
// FockOperator

FockOperator FockOperator::dense(TruncationConfig trunc, CMatrix elems) {
  if (elems.rows() != trunc.total_dim() || elems.cols() != trunc.total_dim()) {
    throw DimensionError("operator: matrix size does not match truncation");
  }
  return FockOperator(std::move(trunc), std::move(elems));
}

FockOperator FockOperator::diagonal(TruncationConfig trunc, CVector diag) {
  if (diag.size() != trunc.total_dim()) {
    throw DimensionError("operator: diagonal size does not match truncation");
  }
  return FockOperator(std::move(trunc), std::move(diag));
}

FockOperator FockOperator::identity(const TruncationConfig& trunc) {
  return diagonal(trunc, CVector::Ones(trunc.total_dim()));
}

const CVector& FockOperator::diag() const {
  if (!is_diagonal()) throw std::logic_error("operator is not stored in diagonal form");
  return std::get<CVector>(elems_);
}

CMatrix FockOperator::to_dense() const {
  if (is_diagonal()) return std::get<CVector>(elems_).asDiagonal();
  return std::get<CMatrix>(elems_);
}

Complex FockOperator::element(Index row, Index col) const {
  if (is_diagonal()) return row == col ? std::get<CVector>(elems_)(row) : Complex{};
  return std::get<CMatrix>(elems_)(row, col);
}

FockOperator FockOperator::adjoint() const {
  if (is_diagonal()) return diagonal(trunc_, std::get<CVector>(elems_).conjugate());
  return dense(trunc_, std::get<CMatrix>(elems_).adjoint());
}

FockOperator FockOperator::operator+(const FockOperator& rhs) const {
  require_same_space(trunc_, rhs.trunc_, "operator sum");
  if (is_diagonal() && rhs.is_diagonal()) return diagonal(trunc_, diag() + rhs.diag());
  return dense(trunc_, to_dense() + rhs.to_dense());
}

FockOperator FockOperator::operator-(const FockOperator& rhs) const {
  require_same_space(trunc_, rhs.trunc_, "operator difference");
  if (is_diagonal() && rhs.is_diagonal()) return diagonal(trunc_, diag() - rhs.diag());
  return dense(trunc_, to_dense() - rhs.to_dense());
}

FockOperator FockOperator::operator*(const FockOperator& rhs) const {
  require_same_space(trunc_, rhs.trunc_, "operator product");
  if (is_diagonal() && rhs.is_diagonal()) {
    return diagonal(trunc_, diag().cwiseProduct(rhs.diag()));
  }
  return dense(trunc_, to_dense() * rhs.to_dense());
}

FockOperator FockOperator::scaled(Complex s) const {
  if (is_diagonal()) return diagonal(trunc_, diag() * s);
  return dense(trunc_, std::get<CMatrix>(elems_) * s);
}

FockOperator kron(const FockOperator& lhs, const FockOperator& rhs) {
  TruncationConfig joint = lhs.trunc().concat(rhs.trunc());
  const Index nl = lhs.trunc().total_dim();
  const Index nr = rhs.trunc().total_dim();
  if (lhs.is_diagonal() && rhs.is_diagonal()) {
    CVector d(nl * nr);
    for (Index i = 0; i < nl; ++i) d.segment(i * nr, nr) = lhs.diag()(i) * rhs.diag();
    return FockOperator::diagonal(std::move(joint), std::move(d));
  }
  const CMatrix a = lhs.to_dense();
  const CMatrix b = rhs.to_dense();
  CMatrix k(nl * nr, nl * nr);
  for (Index i = 0; i < nl; ++i) {
    for (Index j = 0; j < nl; ++j) k.block(i * nr, j * nr, nr, nr) = a(i, j) * b;
  }
  return FockOperator::dense(std::move(joint), std::move(k));
}

FockOperator number_operator(const TruncationConfig& trunc, int mode) {
  if (mode < 0 || mode >= trunc.modes()) throw DomainError("number operator: bad mode index");
  CVector d(trunc.total_dim());
  for (Index i = 0; i < trunc.total_dim(); ++i) {
    d(i) = static_cast<double>(trunc.multi_index(i)[static_cast<std::size_t>(mode)]);
  }
  return FockOperator::diagonal(trunc, std::move(d));
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(TruncationConfig trunc, CMatrix elems)
    : trunc_(std::move(trunc)), elems_(std::move(elems)) {
  if (elems_.rows() != trunc_.total_dim() || elems_.cols() != trunc_.total_dim()) {
    throw DimensionError("density operator: matrix size does not match truncation");
  }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return DensityOperator(psi.trunc(), psi.amps() * psi.amps().adjoint());
}

DensityOperator DensityOperator::normalized() const {
  const double tr = trace();
  if (!(tr > 0.0)) throw ConditioningError("density operator: non-positive trace");
  return DensityOperator(trunc_, elems_ / tr);
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  os << "hermiticity_error=" << hermiticity_error << " trace_error=" << trace_error
     << " min_eigenvalue=" << min_eigenvalue;
  return os.str();
}

ValidationReport validate(const DensityOperator& rho) {
  const CMatrix& m = rho.matrix();
  ValidationReport r;
  r.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
  r.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

bool is_effect(const FockOperator& op, double tol) {
  if (op.is_diagonal()) {
    const CVector& d = op.diag();
    for (Index i = 0; i < d.size(); ++i) {
      if (std::abs(d(i).imag()) > tol || d(i).real() < -tol || d(i).real() > 1.0 + tol) {
        return false;
      }
    }
    return true;
  }
  const CMatrix m = op.to_dense();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol && es.eigenvalues().maxCoeff() <= 1.0 + tol;
}

// ---------------------------------------------------------------------------
// Operations

PureState tensor_product(std::span<const PureState> parts) {
  if (parts.empty()) throw DomainError("tensor product: no factors");
  TruncationConfig trunc = parts[0].trunc();
  CVector amps = parts[0].amps();
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const CVector& rhs = parts[p].amps();
    CVector joint(amps.size() * rhs.size());
    for (Index i = 0; i < amps.size(); ++i) joint.segment(i * rhs.size(), rhs.size()) = amps(i) * rhs;
    amps = std::move(joint);
    trunc = trunc.concat(parts[p].trunc());
  }
  return PureState(std::move(trunc), std::move(amps));
}

PureState tensor_product(std::initializer_list<PureState> parts) {
  return tensor_product(std::span<const PureState>(parts.begin(), parts.size()));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  const ModeSplit s = split_modes(rho.trunc(), keep);
  const Index nk = s.keep_cfg.total_dim();
  const Index nt = s.traced_cfg.total_dim();
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(nk, nk);
  for (Index i = 0; i < nk; ++i) {
    for (Index j = 0; j < nk; ++j) {
      Complex acc{};
      for (Index t = 0; t < nt; ++t) {
        acc += m(s.joint[static_cast<std::size_t>(i * nt + t)],
                 s.joint[static_cast<std::size_t>(j * nt + t)]);
      }
      out(i, j) = acc;
    }
  }
  return DensityOperator(s.keep_cfg, std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

DensityOperator reduce_pure(const PureState& psi, std::span<const int> keep,
                            const FockOperator* effect) {
  const ModeSplit s = split_modes(psi.trunc(), keep);
  const Index nk = s.keep_cfg.total_dim();
  const Index nt = s.traced_cfg.total_dim();
  CMatrix amp(nk, nt);
  for (Index k = 0; k < nk; ++k) {
    for (Index t = 0; t < nt; ++t) amp(k, t) = psi.amps()(s.joint[static_cast<std::size_t>(k * nt + t)]);
  }
  CMatrix out;
  if (effect == nullptr) {
    out = amp * amp.adjoint();
  } else {
    require_same_space(effect->trunc(), s.traced_cfg, "reduce_pure effect");
    if (effect->is_diagonal()) {
      out = amp * effect->diag().asDiagonal() * amp.adjoint();
    } else {
      out = amp * effect->to_dense().transpose() * amp.adjoint();
    }
  }
  // Products of this form are Hermitian up to rounding; remove the rounding.
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(s.keep_cfg, std::move(out));
}

UnitaryResult apply_two_mode_unitary(const PureState& state, const FockOperator& u, int mode_i,
                                     int mode_j) {
  const TruncationConfig& trunc = state.trunc();
  if (mode_i == mode_j || mode_i < 0 || mode_j < 0 || mode_i >= trunc.modes() ||
      mode_j >= trunc.modes()) {
    throw DomainError("two-mode unitary: invalid mode pair");
  }
  const int di = trunc.dim(mode_i);
  const int dj = trunc.dim(mode_j);
  const TruncationConfig pair_cfg({di, dj}, trunc.tail_tol());
  require_same_space(u.trunc(), pair_cfg, "two-mode unitary");
  const int complete = std::min(di, dj);  // sectors n_i + n_j < complete are whole

  // Unitarity on the complete photon-number sectors.
  std::vector<Index> inside;
  for (int ni = 0; ni < di; ++ni) {
    for (int nj = 0; nj < dj; ++nj) {
      if (ni + nj < complete) inside.push_back(static_cast<Index>(ni) * dj + nj);
    }
  }
  const CMatrix dense_u = u.to_dense();
  {
    CMatrix cols(dense_u.rows(), static_cast<Index>(inside.size()));
    for (std::size_t c = 0; c < inside.size(); ++c) cols.col(static_cast<Index>(c)) = dense_u.col(inside[c]);
    const CMatrix gram = cols.adjoint() * cols;
    const double err =
        (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (err > 1e-10) {
      throw DomainError("two-mode unitary: operator is not unitary on the complete sectors (err=" +
                        std::to_string(err) + ")");
    }
  }

  // Gather the (i, j) amplitudes of each configuration of the other modes.
  std::vector<int> pair = {mode_i, mode_j};
  std::vector<int> rest;
  for (int m = 0; m < trunc.modes(); ++m) {
    if (m != mode_i && m != mode_j) rest.push_back(m);
  }
  const TruncationConfig rest_cfg =
      rest.empty() ? TruncationConfig({1}, trunc.tail_tol()) : trunc.select(rest);
  const Index np = pair_cfg.total_dim();
  const Index nr = rest_cfg.total_dim();
  std::vector<Index> joint(static_cast<std::size_t>(np * nr));
  std::vector<int> full(static_cast<std::size_t>(trunc.modes()));
  for (Index r = 0; r < nr; ++r) {
    if (!rest.empty()) {
      const auto ridx = rest_cfg.multi_index(r);
      for (std::size_t k = 0; k < rest.size(); ++k) full[static_cast<std::size_t>(rest[k])] = ridx[k];
    }
    for (int ni = 0; ni < di; ++ni) {
      for (int nj = 0; nj < dj; ++nj) {
        full[static_cast<std::size_t>(mode_i)] = ni;
        full[static_cast<std::size_t>(mode_j)] = nj;
        joint[static_cast<std::size_t>((static_cast<Index>(ni) * dj + nj) * nr + r)] =
            trunc.flat_index(full);
      }
    }
  }

  CMatrix x(np, nr);
  double leakage = 0.0;
  for (Index p = 0; p < np; ++p) {
    const bool cut = (p / dj) + (p % dj) >= complete;
    for (Index r = 0; r < nr; ++r) {
      const Complex a = state.amps()(joint[static_cast<std::size_t>(p * nr + r)]);
      x(p, r) = a;
      if (cut) leakage += std::norm(a);
    }
  }
  if (leakage > trunc.tail_tol()) {
    std::ostringstream msg;
    msg << "two-mode unitary on modes (" << mode_i << ", " << mode_j << "): truncation leakage "
        << leakage << " exceeds tail_tol " << trunc.tail_tol();
    throw TruncationError(msg.str());
  }

  // Photon-number conserving operators are block sparse; skip the zeros.
  const Eigen::SparseMatrix<Complex> su = dense_u.sparseView(Complex(0.0), 0.0);
  const CMatrix y = su * x;

  CVector out(trunc.total_dim());
  for (Index p = 0; p < np; ++p) {
    for (Index r = 0; r < nr; ++r) out(joint[static_cast<std::size_t>(p * nr + r)]) = y(p, r);
  }
  return {PureState(trunc, std::move(out)), leakage};
}

Complex expectation(const DensityOperator& rho, const FockOperator& op) {
  require_same_space(rho.trunc(), op.trunc(), "expectation");
  if (op.is_diagonal()) return rho.matrix().diagonal().cwiseProduct(op.diag()).sum();
  // Tr(rho op) = sum_ij rho_ij op_ji
  return rho.matrix().cwiseProduct(op.to_dense().transpose()).sum();
}

double fidelity_with_pure(const DensityOperator& rho, const PureState& psi) {
  require_same_space(rho.trunc(), psi.trunc(), "fidelity");
  return psi.amps().dot(rho.matrix() * psi.amps()).real();
}

double purity(const DensityOperator& rho) { return rho.matrix().cwiseAbs2().sum(); }

}  // namespace ipstele
