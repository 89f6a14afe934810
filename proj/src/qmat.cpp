#include "qgame/qmat.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "qgame/errors.hpp"

namespace qgame {
namespace {

void require_finite(std::span<const Complex> entries) {
  for (const Complex& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericalError("matrix entry is not finite");
    }
  }
}

std::string shape(const CMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_square(const CMatrix& a, const CMatrix& b, const char* op) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError(std::string(op) + ": expected matching square matrices, got " +
                         shape(a) + " and " + shape(b));
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw DimensionError("expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(data_.size()));
  }
  require_finite(data_);
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.entries());
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.entries());
  return m;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw DimensionError("matrix product: " + shape(*this) + " times " + shape(rhs));
  }
  CMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
  CMatrix out = *this;
  out += rhs;
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("matrix sum: " + shape(*this) + " plus " + shape(rhs));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const { return *this + rhs * Complex{-1.0}; }

CMatrix CMatrix::operator*(Complex scale) const {
  CMatrix out = *this;
  for (Complex& z : out.data_) z *= scale;
  return out;
}

CVector::CVector(std::size_t dim) : data_(dim) {
  if (dim == 0) throw DimensionError("vector dimension must be positive");
}

CVector::CVector(std::vector<Complex> entries) : data_(std::move(entries)) {
  if (data_.empty()) throw DimensionError("vector dimension must be positive");
  require_finite(data_);
}

double CVector::norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix CVector::outer() const {
  CMatrix m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) m(i, j) = data_[i] * std::conj(data_[j]);
  }
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim) {
    throw DimensionError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " exceeds maximum dimension " + std::to_string(kMaxDim));
  }
  CMatrix out(rows, cols);
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
      }
    }
  }
  return out;
}

CMatrix kron_all(std::span<const CMatrix> factors) {
  if (factors.empty()) throw DimensionError("kron_all: no factors");
  CMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

CMatrix conjugate_transpose(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  }
  return out;
}

CVector apply(const CMatrix& m, const CVector& v) {
  if (m.cols() != v.dim()) {
    throw DimensionError("apply: " + shape(m) + " on vector of dim " + std::to_string(v.dim()));
  }
  std::vector<Complex> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  }
  return CVector(std::move(out));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: " + shape(a) + " vs " + shape(b));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

bool is_unitary(const CMatrix& u, double tol) {
  if (!u.is_square()) return false;
  return max_abs_diff(conjugate_transpose(u) * u, CMatrix::identity(u.rows())) <= tol;
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (!a.is_square()) return false;
  return max_abs_diff(a, conjugate_transpose(a)) <= tol;
}

bool is_projector(const CMatrix& p, double tol) {
  return is_hermitian(p, tol) && max_abs_diff(p * p, p) <= tol;
}

CMatrix evolve(const CMatrix& rho, const CMatrix& u) {
  require_same_square(rho, u, "evolve");
  if (!is_unitary(u, kStructuralTol)) throw ConstraintError("evolve: operator is not unitary");
  return u * rho * conjugate_transpose(u);
}

namespace {

double checked_probability(Complex value) {
  if (std::abs(value.imag()) > 1e-10) {
    throw NumericalError("probability has imaginary residue " + std::to_string(value.imag()));
  }
  const double re = value.real();
  if (re < -1e-10 || re > 1.0 + 1e-10) {
    throw NumericalError("probability " + std::to_string(re) + " outside [0, 1]");
  }
  return std::clamp(re, 0.0, 1.0);
}

}  // namespace

double expectation(const CMatrix& rho, const CMatrix& proj) {
  require_same_square(rho, proj, "expectation");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rho.rows(); ++i) {
    for (std::size_t k = 0; k < rho.rows(); ++k) t += proj(i, k) * rho(k, i);
  }
  return checked_probability(t);
}

std::vector<double> basis_probabilities(const CMatrix& rho) {
  if (!rho.is_square()) throw DimensionError("basis_probabilities: " + shape(rho));
  std::vector<double> p(rho.rows());
  for (std::size_t i = 0; i < rho.rows(); ++i) p[i] = checked_probability(rho(i, i));
  return p;
}

double min_eigenvalue(const CMatrix& hermitian) {
  if (!hermitian.is_square()) throw DimensionError("min_eigenvalue: " + shape(hermitian));
  const auto dim = static_cast<Eigen::Index>(hermitian.rows());
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = hermitian(i, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return solver.eigenvalues().minCoeff();
}

bool is_density_matrix(const CMatrix& rho, double tol) {
  if (!rho.is_square()) return false;
  if (!is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace() - Complex{1.0}) > tol) return false;
  return min_eigenvalue(rho) >= -tol;
}

CMatrix basis_projector(int num_qubits, std::size_t index) {
  if (num_qubits < 1 || (std::size_t{1} << num_qubits) > kMaxDim) {
    throw DimensionError("basis_projector: unsupported qubit count " + std::to_string(num_qubits));
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw DimensionError("basis_projector: index out of range");
  CMatrix q(dim, dim);
  q(index, index) = 1.0;
  return q;
}

}  // namespace qgame
