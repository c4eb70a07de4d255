#pragma once

// Dense complex matrices for small Hilbert spaces.
//
// Everything here works on square row-major matrices up to a configurable
// dimension cap (4096 by default). Hamiltonians use hbar = 1, with entries in
// rad/us and times in us.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dnoise {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultDimensionCap = 4096;
inline constexpr double kHermitianTolerance = 1e-9;

class ComplexMatrix {
 public:
  // Zero matrix.
  explicit ComplexMatrix(std::size_t dim);
  // Row-major entries; throws ValidationError on size mismatch or non-finite entries.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t dim() const noexcept { return dim_; }

  Complex operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * dim_ + col];
  }
  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return entries_[row * dim_ + col];
  }

  std::span<const Complex> data() const noexcept { return entries_; }
  std::span<Complex> data() noexcept { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);

// Matrix product. Rows are distributed over OpenMP threads.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);

// Kronecker product, a-major: entry (i, j) of a scales a full copy of b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                     std::size_t cap = kDefaultDimensionCap);

// Hermitian exponential exp(-i * scale * h).
//
// h must be Hermitian to kHermitianTolerance relative to its largest entry;
// it is symmetrized before use. 2x2 inputs take the Pauli closed form, larger
// ones go through a self-adjoint eigendecomposition.
ComplexMatrix herm_expm(const ComplexMatrix& h, double scale);

// Traces out every factor of `dims` not listed in `keep` (0-based). Kept
// factors appear in ascending order in the result.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_error(const ComplexMatrix& m);
double unitarity_error(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);
bool is_unitary(const ComplexMatrix& m, double tol = kHermitianTolerance);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& h);

// Splits a tensor-product index space into a chosen subset of factors and the
// remaining ones. index(rest, sub) gives the full basis index whose digits on
// the subset factors spell `sub` (in the order the subset was listed) and on
// the other factors spell `rest` (in ascending factor order).
class FactorSplit {
 public:
  FactorSplit(std::span<const std::size_t> dims, std::span<const std::size_t> subset);

  std::size_t total_dim() const noexcept { return total_; }
  std::size_t sub_dim() const noexcept { return sub_dim_; }
  std::size_t rest_dim() const noexcept { return rest_dim_; }

  std::size_t index(std::size_t rest, std::size_t sub) const noexcept {
    return table_[rest * sub_dim_ + sub];
  }

 private:
  std::size_t total_ = 1;
  std::size_t sub_dim_ = 1;
  std::size_t rest_dim_ = 1;
  std::vector<std::size_t> table_;
};

namespace serial {

// Single-threaded reference for operator*.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace serial

}  // namespace dnoise
