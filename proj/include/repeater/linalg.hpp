#pragma once

// Small dense complex linear algebra for few-qubit pure states.
//
// Qubit convention: |e> = (1,0), |g> = (0,1). In a multi-qubit ket the
// leftmost factor is the most significant bit, so "eg" is index 1 and
// "ge" is index 2 in a two-qubit register.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repeater/errors.hpp"

namespace repeater {

using Complex = std::complex<double>;

inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kZeroBranchNorm = 1e-14;

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<Complex> amplitudes);

  /// Computational basis ket from a label such as "egge".
  static StateVector ket(std::string_view label);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  /// Number of qubits; throws DimensionMismatch unless dim is a power of two.
  std::size_t qubits() const;

  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const Complex> amplitudes() const { return amps_; }

  double norm() const;
  StateVector normalized() const;
  StateVector scaled(Complex factor) const;

  StateVector operator+(const StateVector& other) const;
  StateVector operator-(const StateVector& other) const;

  /// Label of basis index i in an n-qubit register, e.g. 5 of 4 qubits -> "egeg".
  static std::string basis_label(std::size_t index, std::size_t n_qubits);

 private:
  std::vector<Complex> amps_;
};

Complex inner(const StateVector& bra, const StateVector& ket);
StateVector kron(const StateVector& a, const StateVector& b);

/// max_i |a_i - b_i|
double max_abs_diff(const StateVector& a, const StateVector& b);
/// max_i |a_i - e^{iθ} b_i| with θ chosen from the largest-magnitude entry of a.
double max_abs_diff_up_to_phase(const StateVector& a, const StateVector& b);

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix scaled(Complex factor) const;
  StateVector operator*(const StateVector& v) const;

  /// Column c as a state vector.
  StateVector column(std::size_t c) const;

  double max_abs() const;
  bool is_unitary(double tol = kUnitarityTol) const;
  bool is_hermitian(double tol) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Aligns b's global phase to a on a's largest-magnitude entry, then max |a - b|.
double max_abs_diff_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||U^dagger U - I||_max
double unitarity_defect(const ComplexMatrix& u);

namespace ops {
ComplexMatrix sigma_plus();   // |e><g|
ComplexMatrix sigma_minus();  // |g><e|
ComplexMatrix sigma_x();
ComplexMatrix sigma_z();
/// Places a k-qubit operator on sites [first_site, first_site + k) of an
/// n-qubit register, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t first_site, std::size_t n_qubits);
}  // namespace ops

struct OutcomeLabel {
  int first_atom = 0;
  int second_atom = 0;
  std::string result;

  friend bool operator==(const OutcomeLabel&, const OutcomeLabel&) = default;
};

struct HeraldedState {
  StateVector state;  // normalized
  double probability = 0.0;
  OutcomeLabel outcome;
};

/// Projects the qubits at `subsystem` (register positions, in the order the
/// target's factors are listed) onto `target`, returning the renormalized
/// residual on the remaining qubits and the branch probability.
/// Throws ZeroProbabilityBranch if the residual norm is below 1e-14.
HeraldedState project(const StateVector& state,
                      std::span<const std::size_t> subsystem,
                      const StateVector& target,
                      OutcomeLabel outcome = {});

/// Wootters concurrence of a pure two-qubit state: 2|ad - bc| / <psi|psi>.
double concurrence_pure(const StateVector& state);

/// exp(-i h t) for Hermitian h (dim <= 64).
ComplexMatrix matrix_exponential_small(const ComplexMatrix& h, double t);

}  // namespace repeater
