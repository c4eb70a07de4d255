#include "dnoise/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "dnoise/errors.hpp"

namespace dnoise {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw ValidationError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                          " vs " + std::to_string(b.dim()) + ")");
  }
}

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMatrix> as_eigen(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  return {m.data().data(), n, n};
}

ComplexMatrix symmetrized(const ComplexMatrix& h) {
  ComplexMatrix out(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) {
    for (std::size_t j = 0; j < h.dim(); ++j) {
      out(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    }
  }
  return out;
}

// exp(-i * scale * h) for Hermitian 2x2 h = a0 I + a . sigma.
ComplexMatrix expm_2x2(const ComplexMatrix& h, double scale) {
  const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double ax = h(0, 1).real();
  const double ay = -h(0, 1).imag();
  const double norm = std::sqrt(ax * ax + ay * ay + az * az);
  const double angle = scale * norm;
  const Complex phase = std::polar(1.0, -scale * a0);
  const double cs = std::cos(angle);
  // sin(angle)/norm, finite as norm -> 0
  const double sn = norm > 0.0 ? std::sin(angle) / norm : scale;
  const Complex i{0.0, 1.0};
  ComplexMatrix u(2);
  u(0, 0) = phase * (cs - i * sn * az);
  u(1, 1) = phase * (cs + i * sn * az);
  u(0, 1) = phase * (-i * sn * Complex{ax, -ay});
  u(1, 0) = phase * (-i * sn * Complex{ax, ay});
  return u;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw ValidationError("ComplexMatrix: dimension must be at least 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw ValidationError("ComplexMatrix: dimension must be at least 1");
  if (entries_.size() != dim * dim) {
    throw ValidationError("ComplexMatrix: expected " + std::to_string(dim * dim) +
                          " entries, got " + std::to_string(entries_.size()));
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("ComplexMatrix: non-finite entry");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) throw ValidationError("ComplexMatrix: dimension must be at least 1");
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw ValidationError("ComplexMatrix: rows must form a square");
    for (const Complex& z : row) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ValidationError("ComplexMatrix: non-finite entry");
      }
      entries_.push_back(z);
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (Complex& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex scalar) { return a *= scalar; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  const Complex* pa = a.data().data();
  const Complex* pb = b.data().data();
  Complex* po = out.data().data();
  // i-k-j order keeps the inner loop contiguous in b and out.
#pragma omp parallel for schedule(static) if (n >= 64)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    Complex* row = po + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = pa[i * n + k];
      if (aik == Complex{}) continue;
      const Complex* brow = pb + k * n;
      for (std::size_t j = 0; j < n; ++j) row[j] += aik * brow[j];
    }
  }
  return out;
}

namespace serial {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

}  // namespace serial

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

Complex trace(const ComplexMatrix& m) {
  Complex sum{};
  for (std::size_t i = 0; i < m.dim(); ++i) sum += m(i, i);
  return sum;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t cap) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da > cap / db) {
    throw CapacityError("tensor: dimension " + std::to_string(da) + "x" + std::to_string(db) +
                        " exceeds cap " + std::to_string(cap));
  }
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

ComplexMatrix herm_expm(const ComplexMatrix& h, double scale) {
  const double largest = max_abs(h);
  if (largest > 0.0 && hermiticity_error(h) > kHermitianTolerance * largest) {
    throw ValidationError("herm_expm: generator is not Hermitian");
  }
  const ComplexMatrix hs = symmetrized(h);
  const std::size_t n = hs.dim();
  if (n == 1) return ComplexMatrix(1, {std::polar(1.0, -scale * hs(0, 0).real())});
  if (n == 2) return expm_2x2(hs, scale);

  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(as_eigen(hs));
  if (solver.info() != Eigen::Success) {
    throw ValidationError("herm_expm: eigendecomposition did not converge");
  }
  const auto& vecs = solver.eigenvectors();
  Eigen::VectorXcd phases(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, -scale * solver.eigenvalues()(k));
  }
  const EigenMatrix u = vecs * phases.asDiagonal() * vecs.adjoint();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

FactorSplit::FactorSplit(std::span<const std::size_t> dims, std::span<const std::size_t> subset) {
  if (dims.empty()) throw ValidationError("FactorSplit: empty dimension list");
  std::vector<bool> in_subset(dims.size(), false);
  for (std::size_t s : subset) {
    if (s >= dims.size()) {
      throw ValidationError("factor index " + std::to_string(s) + " out of range");
    }
    if (in_subset[s]) throw ValidationError("factor index " + std::to_string(s) + " repeated");
    in_subset[s] = true;
  }
  for (std::size_t d : dims) {
    if (d == 0) throw ValidationError("FactorSplit: zero-dimensional factor");
    total_ *= d;
  }
  for (std::size_t s : subset) sub_dim_ *= dims[s];
  rest_dim_ = total_ / sub_dim_;

  table_.resize(total_);
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t n = 0; n < total_; ++n) {
    std::size_t rem = n;
    for (std::size_t f = dims.size(); f-- > 0;) {
      digits[f] = rem % dims[f];
      rem /= dims[f];
    }
    std::size_t sub = 0;
    for (std::size_t s : subset) sub = sub * dims[s] + digits[s];
    std::size_t rest = 0;
    for (std::size_t f = 0; f < dims.size(); ++f) {
      if (!in_subset[f]) rest = rest * dims[f] + digits[f];
    }
    table_[rest * sub_dim_ + sub] = n;
  }
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  const FactorSplit split(dims, kept);
  if (split.total_dim() != m.dim()) {
    throw ValidationError("partial_trace: factor dimensions multiply to " +
                          std::to_string(split.total_dim()) + ", matrix has dimension " +
                          std::to_string(m.dim()));
  }
  const std::size_t dk = split.sub_dim();
  ComplexMatrix out(dk);
  for (std::size_t r = 0; r < split.rest_dim(); ++r) {
    for (std::size_t i = 0; i < dk; ++i) {
      const std::size_t row = split.index(r, i);
      for (std::size_t j = 0; j < dk; ++j) out(i, j) += m(row, split.index(r, j));
    }
  }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const Complex& z : m.data()) best = std::max(best, std::abs(z));
  return best;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    best = std::max(best, std::abs(a.data()[k] - b.data()[k]));
  }
  return best;
}

double hermiticity_error(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) {
      best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return best;
}

double unitarity_error(const ComplexMatrix& m) {
  return max_abs_diff(adjoint(m) * m, ComplexMatrix::identity(m.dim()));
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return hermiticity_error(m) <= tol * std::max(1.0, max_abs(m));
}

bool is_unitary(const ComplexMatrix& m, double tol) { return unitarity_error(m) <= tol; }

double min_eigenvalue(const ComplexMatrix& h) {
  if (h.dim() == 1) return h(0, 0).real();
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(as_eigen(symmetrized(h)),
                                                    Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("min_eigenvalue: eigendecomposition did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

}  // namespace dnoise
