#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qgame {

using Complex = std::complex<double>;

// Largest supported square dimension (5 qubits).
inline constexpr std::size_t kMaxDim = 32;

inline constexpr double kStructuralTol = 1e-9;
inline constexpr double kExactTol = 1e-12;

/// Dense row-major complex matrix. Entries are always finite.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const Complex> diag);
  static CMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  Complex trace() const;

  CMatrix operator*(const CMatrix& rhs) const;
  CMatrix operator+(const CMatrix& rhs) const;
  CMatrix operator-(const CMatrix& rhs) const;
  CMatrix operator*(Complex scale) const;
  CMatrix& operator+=(const CMatrix& rhs);

  bool operator==(const CMatrix& rhs) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Complex column vector (pure state amplitudes).
class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim);
  explicit CVector(std::vector<Complex> entries);

  std::size_t dim() const noexcept { return data_.size(); }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  double norm() const;
  // |v><v|
  CMatrix outer() const;

  bool operator==(const CVector& rhs) const = default;

 private:
  std::vector<Complex> data_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron_all(std::span<const CMatrix> factors);
CMatrix conjugate_transpose(const CMatrix& a);
CVector apply(const CMatrix& m, const CVector& v);

// Largest entry-wise modulus of a - b. Shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

bool is_unitary(const CMatrix& u, double tol = kStructuralTol);
bool is_hermitian(const CMatrix& a, double tol = kStructuralTol);
bool is_projector(const CMatrix& p, double tol = kStructuralTol);

/// Returns u·rho·u†. Throws DimensionError on shape mismatch and
/// ConstraintError when u is not unitary within kStructuralTol.
CMatrix evolve(const CMatrix& rho, const CMatrix& u);

/// Tr(proj·rho) as a real number clamped to [0, 1]. Throws NumericalError
/// when the imaginary residue exceeds 1e-10 or the value falls outside
/// [-1e-10, 1 + 1e-10].
double expectation(const CMatrix& rho, const CMatrix& proj);

/// Hermitian within tol, unit trace within tol, and smallest eigenvalue
/// >= -tol. Non-square input returns false.
bool is_density_matrix(const CMatrix& rho, double tol = kStructuralTol);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& hermitian);

/// Computational-basis measurement probabilities, i.e. expectation() against
/// every basis projector, read off the diagonal. Same checks as expectation().
std::vector<double> basis_probabilities(const CMatrix& rho);

// Projector Q_{y_1} ⊗ ... ⊗ Q_{y_n} onto basis index `index` of an n-qubit space.
CMatrix basis_projector(int num_qubits, std::size_t index);

}  // namespace qgame
