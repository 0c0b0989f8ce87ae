#include "repeater/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>

namespace repeater {

namespace {

void require_finite(std::span<const Complex> values, const char* what) {
  for (const auto& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NonFiniteValue(std::string(what) + ": non-finite entry");
    }
  }
}

std::size_t qubit_count(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw DimensionMismatch("dimension " + std::to_string(dim) + " is not a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(dim));
}

}  // namespace

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw DimensionMismatch("StateVector: empty");
  require_finite(amps_, "StateVector");
}

StateVector StateVector::ket(std::string_view label) {
  if (label.empty()) throw std::invalid_argument("ket: empty label");
  std::size_t index = 0;
  for (char c : label) {
    if (c != 'e' && c != 'g') throw std::invalid_argument("ket: label must use 'e'/'g'");
    index = (index << 1) | (c == 'g' ? 1u : 0u);
  }
  return basis(std::size_t{1} << label.size(), index);
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionMismatch("basis: index out of range");
  std::vector<Complex> a(dim);
  a[index] = 1.0;
  return StateVector(std::move(a));
}

std::size_t StateVector::qubits() const { return qubit_count(dim()); }

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& z : amps_) s += std::norm(z);
  return std::sqrt(s);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n < kZeroBranchNorm) throw ZeroProbabilityBranch("cannot normalize a null vector");
  return scaled(1.0 / n);
}

StateVector StateVector::scaled(Complex factor) const {
  std::vector<Complex> a(amps_);
  for (auto& z : a) z *= factor;
  return StateVector(std::move(a));
}

StateVector StateVector::operator+(const StateVector& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("StateVector +: dimension mismatch");
  std::vector<Complex> a(amps_);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += other.amps_[i];
  return StateVector(std::move(a));
}

StateVector StateVector::operator-(const StateVector& other) const {
  return *this + other.scaled(-1.0);
}

std::string StateVector::basis_label(std::size_t index, std::size_t n_qubits) {
  std::string s(n_qubits, 'e');
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if ((index >> (n_qubits - 1 - q)) & 1u) s[q] = 'g';
  }
  return s;
}

Complex inner(const StateVector& bra, const StateVector& ket) {
  if (bra.dim() != ket.dim()) throw DimensionMismatch("inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < bra.dim(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

StateVector kron(const StateVector& a, const StateVector& b) {
  std::vector<Complex> out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return StateVector(std::move(out));
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff_up_to_phase(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff_up_to_phase: dimension mismatch");
  std::size_t k = 0;
  for (std::size_t i = 1; i < a.dim(); ++i)
    if (std::abs(a[i]) > std::abs(a[k])) k = i;
  Complex phase = 1.0;
  if (std::abs(a[k]) > 0.0 && std::abs(b[k]) > 0.0) {
    phase = (a[k] / std::abs(a[k])) / (b[k] / std::abs(b[k]));
  }
  return max_abs_diff(a, b.scaled(phase));
}

// -------------------------------------------------------------- ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("ComplexMatrix: zero dimension");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("ComplexMatrix: zero dimension");
  if (data_.size() != rows * cols) throw DimensionMismatch("ComplexMatrix: entry count mismatch");
  require_finite(data_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product: inner dimension mismatch");
  ComplexMatrix m(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(r, k);
      if (a == Complex{}) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) m(r, c) += a * rhs(k, c);
    }
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum: shape mismatch");
  ComplexMatrix m(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += rhs.data_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  return *this + rhs.scaled(-1.0);
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
  ComplexMatrix m(*this);
  for (auto& z : m.data_) z *= factor;
  return m;
}

StateVector ComplexMatrix::operator*(const StateVector& v) const {
  if (cols_ != v.dim()) throw DimensionMismatch("matrix-vector product: dimension mismatch");
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return StateVector(std::move(out));
}

StateVector ComplexMatrix::column(std::size_t c) const {
  if (c >= cols_) throw DimensionMismatch("column: index out of range");
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return StateVector(std::move(out));
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_unitary(double tol) const {
  return rows_ == cols_ && unitarity_defect(*this) <= tol;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return rows_ == cols_ && max_abs_diff(*this, adjoint()) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex x = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          m(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
    }
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("max_abs_diff: shape mismatch");
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

double max_abs_diff_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("max_abs_diff: shape mismatch");
  auto ea = a.entries();
  auto eb = b.entries();
  std::size_t k = 0;
  for (std::size_t i = 1; i < ea.size(); ++i)
    if (std::abs(ea[i]) > std::abs(ea[k])) k = i;
  Complex phase = 1.0;
  if (std::abs(ea[k]) > 0.0 && std::abs(eb[k]) > 0.0) {
    phase = (ea[k] / std::abs(ea[k])) / (eb[k] / std::abs(eb[k]));
  }
  return max_abs_diff(a, b.scaled(phase));
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionMismatch("unitarity_defect: not square");
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

namespace ops {

ComplexMatrix sigma_plus() { return ComplexMatrix(2, 2, {0.0, 1.0, 0.0, 0.0}); }
ComplexMatrix sigma_minus() { return ComplexMatrix(2, 2, {0.0, 0.0, 1.0, 0.0}); }
ComplexMatrix sigma_x() { return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix sigma_z() { return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix embed(const ComplexMatrix& op, std::size_t first_site, std::size_t n_qubits) {
  const std::size_t k = qubit_count(op.rows());
  if (op.rows() != op.cols()) throw DimensionMismatch("embed: operator not square");
  if (first_site + k > n_qubits) throw DimensionMismatch("embed: operator exceeds register");
  ComplexMatrix left = ComplexMatrix::identity(std::size_t{1} << first_site);
  ComplexMatrix right = ComplexMatrix::identity(std::size_t{1} << (n_qubits - first_site - k));
  return kron(kron(left, op), right);
}

}  // namespace ops

// ---------------------------------------------------------------- measurement

HeraldedState project(const StateVector& state,
                      std::span<const std::size_t> subsystem,
                      const StateVector& target,
                      OutcomeLabel outcome) {
  const std::size_t n = state.qubits();
  const std::size_t k = subsystem.size();
  if (k == 0 || k >= n) throw DimensionMismatch("project: subsystem must be a proper, non-empty subset");
  if (target.dim() != (std::size_t{1} << k)) throw DimensionMismatch("project: target dimension does not match subsystem");

  std::vector<bool> measured(n, false);
  for (auto q : subsystem) {
    if (q >= n || measured[q]) throw DimensionMismatch("project: invalid or repeated qubit index");
    measured[q] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t q = 0; q < n; ++q)
    if (!measured[q]) rest.push_back(q);

  const std::size_t m = rest.size();
  std::vector<Complex> residual(std::size_t{1} << m);
  for (std::size_t r = 0; r < residual.size(); ++r) {
    std::size_t base = 0;
    for (std::size_t j = 0; j < m; ++j)
      if ((r >> (m - 1 - j)) & 1u) base |= std::size_t{1} << (n - 1 - rest[j]);
    Complex s = 0.0;
    for (std::size_t t = 0; t < target.dim(); ++t) {
      std::size_t full = base;
      for (std::size_t j = 0; j < k; ++j)
        if ((t >> (k - 1 - j)) & 1u) full |= std::size_t{1} << (n - 1 - subsystem[j]);
      s += std::conj(target[t]) * state[full];
    }
    residual[r] = s;
  }

  StateVector res(std::move(residual));
  const double nrm = res.norm();
  if (nrm < kZeroBranchNorm) {
    throw ZeroProbabilityBranch("project: outcome '" + outcome.result + "' has vanishing amplitude");
  }
  return HeraldedState{res.scaled(1.0 / nrm), nrm * nrm, std::move(outcome)};
}

double concurrence_pure(const StateVector& state) {
  if (state.dim() != 4) throw DimensionMismatch("concurrence_pure: expected a two-qubit state");
  const double n2 = std::norm(state[0]) + std::norm(state[1]) + std::norm(state[2]) + std::norm(state[3]);
  if (n2 == 0.0) throw ZeroProbabilityBranch("concurrence_pure: null state");
  const double c = 2.0 * std::abs(state[0] * state[3] - state[1] * state[2]) / n2;
  return std::min(c, 1.0);
}

ComplexMatrix matrix_exponential_small(const ComplexMatrix& h, double t) {
  const std::size_t n = h.rows();
  if (n != h.cols()) throw DimensionMismatch("matrix_exponential_small: not square");
  if (n > 64) throw DimensionMismatch("matrix_exponential_small: dimension exceeds 64");
  if (!h.is_hermitian(1e-10)) throw NotHermitian("matrix_exponential_small: input is not Hermitian");
  if (t == 0.0) return ComplexMatrix::identity(n);

  Eigen::MatrixXcd m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = h(r, c);
  // Symmetrize so the solver sees an exactly Hermitian input.
  m = 0.5 * (m + m.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m);
  const Eigen::VectorXd& w = eig.eigenvalues();
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  Eigen::VectorXcd phases(n);
  for (std::size_t i = 0; i < n; ++i) phases(i) = std::exp(Complex(0.0, -w(i) * t));
  const Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();

  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = u(r, c);
  return out;
}

}  // namespace repeater
