#pragma once

// Dense linear algebra on truncated multi-mode Fock spaces.
//
// Joint basis states are addressed by a multi-index (n_1, ..., n_k) flattened
// row-major, so the first mode is the most significant digit. The canonical
// layout for the four-mode photon-subtraction setup is (a, b, c, d).

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace ipstele {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

class TruncationConfig {
 public:
  static constexpr double kDefaultTailTol = 1e-12;

  explicit TruncationConfig(std::vector<int> dims, double tail_tol = kDefaultTailTol);

  int modes() const { return static_cast<int>(dims_.size()); }
  int dim(int mode) const { return dims_.at(static_cast<std::size_t>(mode)); }
  const std::vector<int>& dims() const { return dims_; }
  double tail_tol() const { return tail_tol_; }
  Index total_dim() const { return total_; }

  Index flat_index(std::span<const int> idx) const;
  Index flat_index(std::initializer_list<int> idx) const {
    return flat_index(std::span<const int>(idx.begin(), idx.size()));
  }
  std::vector<int> multi_index(Index flat) const;

  /// Sub-configuration made of the listed modes, in the listed order.
  TruncationConfig select(std::span<const int> modes) const;
  TruncationConfig concat(const TruncationConfig& other) const;

  bool same_space(const TruncationConfig& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  double tail_tol_;
  Index total_;
};

inline TruncationConfig single_mode(int dim, double tail_tol = TruncationConfig::kDefaultTailTol) {
  return TruncationConfig({dim}, tail_tol);
}

class PureState {
 public:
  PureState(TruncationConfig trunc, CVector amps);

  static PureState basis(const TruncationConfig& trunc, std::span<const int> idx);
  static PureState basis(const TruncationConfig& trunc, std::initializer_list<int> idx) {
    return basis(trunc, std::span<const int>(idx.begin(), idx.size()));
  }

  const TruncationConfig& trunc() const { return trunc_; }
  const CVector& amps() const { return amps_; }

  Complex amplitude(std::span<const int> idx) const { return amps_(trunc_.flat_index(idx)); }
  Complex amplitude(std::initializer_list<int> idx) const { return amps_(trunc_.flat_index(idx)); }

  double norm_squared() const { return amps_.squaredNorm(); }
  PureState normalized() const;

 private:
  TruncationConfig trunc_;
  CVector amps_;
};

/// Operator on a truncated space. Operators that are diagonal in the Fock
/// basis (ON/OFF effects, number operators) keep only their diagonal.
class FockOperator {
 public:
  static FockOperator dense(TruncationConfig trunc, CMatrix elems);
  static FockOperator diagonal(TruncationConfig trunc, CVector diag);
  static FockOperator identity(const TruncationConfig& trunc);

  const TruncationConfig& trunc() const { return trunc_; }
  bool is_diagonal() const { return std::holds_alternative<CVector>(elems_); }

  /// Diagonal entries; throws std::logic_error for dense operators.
  const CVector& diag() const;
  CMatrix to_dense() const;
  Complex element(Index row, Index col) const;

  FockOperator adjoint() const;
  FockOperator operator+(const FockOperator& rhs) const;
  FockOperator operator-(const FockOperator& rhs) const;
  FockOperator operator*(const FockOperator& rhs) const;
  FockOperator scaled(Complex s) const;

 private:
  FockOperator(TruncationConfig trunc, std::variant<CMatrix, CVector> elems)
      : trunc_(std::move(trunc)), elems_(std::move(elems)) {}

  TruncationConfig trunc_;
  std::variant<CMatrix, CVector> elems_;
};

FockOperator kron(const FockOperator& lhs, const FockOperator& rhs);

/// n-hat of one mode, embedded in the full space of `trunc`.
FockOperator number_operator(const TruncationConfig& trunc, int mode);

class DensityOperator {
 public:
  DensityOperator(TruncationConfig trunc, CMatrix elems);

  static DensityOperator from_pure(const PureState& psi);

  const TruncationConfig& trunc() const { return trunc_; }
  const CMatrix& matrix() const { return elems_; }

  Complex element(Index row, Index col) const { return elems_(row, col); }
  double trace() const { return elems_.trace().real(); }
  DensityOperator normalized() const;

 private:
  TruncationConfig trunc_;
  CMatrix elems_;
};

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdFloor = -1e-10;

struct ValidationReport {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger| entry
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;

  bool ok() const {
    return hermiticity_error <= kHermiticityTol && trace_error <= kTraceTol &&
           min_eigenvalue >= kPsdFloor;
  }
  std::string describe() const;
};

ValidationReport validate(const DensityOperator& rho);

/// POVM-element check: Hermitian with spectrum in [0, 1 + 1e-12].
bool is_effect(const FockOperator& op, double tol = 1e-12);

PureState tensor_product(std::span<const PureState> parts);
PureState tensor_product(std::initializer_list<PureState> parts);

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<int> keep);

/// Tr_traced{ |psi><psi| (1_keep (x) effect) } without forming |psi><psi|.
/// `effect` acts on the traced modes in increasing mode order; pass nullptr
/// for the plain partial trace. The result is not renormalized.
DensityOperator reduce_pure(const PureState& psi, std::span<const int> keep,
                            const FockOperator* effect = nullptr);

struct UnitaryResult {
  PureState state;
  double leakage;  // input mass in photon-number sectors the truncation cuts
};

/// Applies a two-mode operator `u` (on the space dims (d_i, d_j)) to modes
/// (i, j). Leakage counts mass with n_i + n_j >= min(d_i, d_j), where the
/// truncated sector is incomplete.
UnitaryResult apply_two_mode_unitary(const PureState& state, const FockOperator& u, int mode_i,
                                     int mode_j);

Complex expectation(const DensityOperator& rho, const FockOperator& op);

/// <psi| rho |psi>
double fidelity_with_pure(const DensityOperator& rho, const PureState& psi);

double purity(const DensityOperator& rho);

}  // namespace ipstele
