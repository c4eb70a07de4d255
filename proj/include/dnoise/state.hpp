#pragma once

// Density matrices over a tensor product of finite factors, with unitary and
// Kraus-map application and exact (branch-enumerating) projective measurement.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "dnoise/linalg.hpp"

namespace dnoise {

// Branches below this probability carry no post-measurement state.
inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kStateTolerance = 1e-9;

struct StateDiagnostics {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;

  bool valid(double tol = kStateTolerance) const {
    return hermiticity_error <= tol && trace_error <= tol && min_eigenvalue >= -tol;
  }
};

struct MeasurementBranch;

class DensityMatrix {
 public:
  // Validates hermiticity, unit trace and positivity (eigenvalues down to -1e-9
  // are accepted; entries are never modified).
  DensityMatrix(ComplexMatrix mat, std::vector<std::size_t> dims);

  // |psi><psi| for a normalized amplitude vector.
  static DensityMatrix pure(std::span<const Complex> amplitudes, std::vector<std::size_t> dims);
  // Computational basis state; digits[f] is the level of factor f.
  static DensityMatrix basis(std::span<const std::size_t> digits, std::vector<std::size_t> dims);
  static DensityMatrix product(const DensityMatrix& a, const DensityMatrix& b,
                               std::size_t cap = kDefaultDimensionCap);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return mat_.dim(); }

  // Full check including an eigenvalue solve; cheap enough for tests, not for inner loops.
  StateDiagnostics diagnostics() const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, ComplexMatrix mat, std::vector<std::size_t> dims)
      : mat_(std::move(mat)), dims_(std::move(dims)) {}

  friend DensityMatrix apply_unitary(const DensityMatrix&, const ComplexMatrix&,
                                     std::span<const std::size_t>);
  friend DensityMatrix apply_kraus(const DensityMatrix&, std::span<const ComplexMatrix>,
                                   std::span<const std::size_t>);
  friend std::vector<MeasurementBranch> measure_qubit(const DensityMatrix&, std::size_t);
  friend DensityMatrix reduce(const DensityMatrix&, std::span<const std::size_t>);
  friend DensityMatrix decohere_qubit(const DensityMatrix&, std::size_t);
  friend DensityMatrix apply_hadamard(const DensityMatrix&, std::size_t);

  ComplexMatrix mat_;
  std::vector<std::size_t> dims_;
};

struct MeasurementBranch {
  int outcome = 0;
  double probability = 0.0;
  // Absent when probability < kProbabilityFloor.
  std::optional<DensityMatrix> post_state;

  bool negligible() const noexcept { return !post_state.has_value(); }
};

// rho -> U rho U^dagger with `u` acting on `targets` (in the listed order) and
// the identity elsewhere.
DensityMatrix apply_unitary(const DensityMatrix& state, const ComplexMatrix& u,
                            std::span<const std::size_t> targets);

// rho -> sum_k K rho K^dagger on `targets`; the set must satisfy sum K^dagger K = I.
DensityMatrix apply_kraus(const DensityMatrix& state, std::span<const ComplexMatrix> ops,
                          std::span<const std::size_t> targets);

// Hadamard on a two-level factor, evaluated as (1/2) H' rho H' with
// H' = [[1, 1], [1, -1]]. The only scaling is by a power of two, so states
// with dyadic entries map to exact results.
DensityMatrix apply_hadamard(const DensityMatrix& state, std::size_t target);

// Exact computational-basis measurement of a qubit factor. Both outcome
// branches are returned; other factors (including correlated environments)
// stay in the post-measurement states untouched.
std::vector<MeasurementBranch> measure_qubit(const DensityMatrix& state, std::size_t target);

// Projector-sandwiched state sum_b P_b rho P_b.
DensityMatrix decohere_qubit(const DensityMatrix& state, std::size_t target);

// Reduced state on the kept factors (ascending order).
DensityMatrix reduce(const DensityMatrix& state, std::span<const std::size_t> keep);

// Shot sampling for counts output. Draws `shots` outcomes from the
// distribution `probs` with std::mt19937_64 seeded by `seed`; each draw maps
// the top 53 bits of one engine output to u in [0,1) and picks the first index
// whose cumulative probability exceeds u.
std::vector<std::uint64_t> sample_counts(std::span<const double> probs, std::uint64_t shots,
                                         std::uint64_t seed);

inline DensityMatrix apply_unitary(const DensityMatrix& state, const ComplexMatrix& u,
                                   std::initializer_list<std::size_t> targets) {
  return apply_unitary(state, u, std::span(targets.begin(), targets.size()));
}

inline DensityMatrix apply_kraus(const DensityMatrix& state, std::span<const ComplexMatrix> ops,
                                 std::initializer_list<std::size_t> targets) {
  return apply_kraus(state, ops, std::span(targets.begin(), targets.size()));
}

inline DensityMatrix reduce(const DensityMatrix& state, std::initializer_list<std::size_t> keep) {
  return reduce(state, std::span(keep.begin(), keep.size()));
}

namespace serial {

// Explicit embedding of `op` into the full space; reference for the local kernels.
ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const std::size_t> dims,
                             std::span<const std::size_t> targets);

ComplexMatrix apply_unitary(const ComplexMatrix& rho, const ComplexMatrix& u,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> targets);

}  // namespace serial

}  // namespace dnoise
