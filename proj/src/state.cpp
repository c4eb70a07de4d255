#include "dnoise/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "dnoise/errors.hpp"

namespace dnoise {

namespace {

std::size_t product_of(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> target_dims(std::span<const std::size_t> dims,
                                     std::span<const std::size_t> targets) {
  std::vector<std::size_t> out;
  out.reserve(targets.size());
  for (std::size_t t : targets) {
    if (t >= dims.size()) {
      throw ValidationError("target factor " + std::to_string(t) + " out of range");
    }
    out.push_back(dims[t]);
  }
  return out;
}

// left * rho * right^dagger, with left/right acting on the split's subset.
ComplexMatrix apply_local(const ComplexMatrix& rho, const ComplexMatrix& left,
                          const ComplexMatrix& right, const FactorSplit& split) {
  const std::size_t n = rho.dim();
  const std::size_t ds = split.sub_dim();
  const std::size_t nr = split.rest_dim();
  const auto sn = static_cast<std::ptrdiff_t>(n);

  ComplexMatrix half(n);
#pragma omp parallel for schedule(static) if (n >= 64)
  for (std::ptrdiff_t col = 0; col < sn; ++col) {
    std::vector<Complex> v(ds);
    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t t = 0; t < ds; ++t) v[t] = rho(split.index(r, t), col);
      for (std::size_t s = 0; s < ds; ++s) {
        Complex acc{};
        for (std::size_t t = 0; t < ds; ++t) acc += left(s, t) * v[t];
        half(split.index(r, s), col) = acc;
      }
    }
  }

  ComplexMatrix out(n);
#pragma omp parallel for schedule(static) if (n >= 64)
  for (std::ptrdiff_t row = 0; row < sn; ++row) {
    std::vector<Complex> v(ds);
    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t t = 0; t < ds; ++t) v[t] = half(row, split.index(r, t));
      for (std::size_t s = 0; s < ds; ++s) {
        Complex acc{};
        for (std::size_t t = 0; t < ds; ++t) acc += v[t] * std::conj(right(s, t));
        out(row, split.index(r, s)) = acc;
      }
    }
  }
  return out;
}

FactorSplit checked_split(std::span<const std::size_t> dims, std::span<const std::size_t> targets,
                          std::size_t op_dim, const char* who) {
  if (targets.empty()) throw ValidationError(std::string(who) + ": empty target set");
  const auto tdims = target_dims(dims, targets);
  const std::size_t expected = product_of(tdims);
  if (op_dim != expected) {
    throw ValidationError(std::string(who) + ": operator dimension " + std::to_string(op_dim) +
                          " does not match target dimension " + std::to_string(expected));
  }
  return FactorSplit(dims, targets);
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat, std::vector<std::size_t> dims)
    : mat_(std::move(mat)), dims_(std::move(dims)) {
  if (dims_.empty()) throw ValidationError("DensityMatrix: empty factor list");
  if (product_of(dims_) != mat_.dim()) {
    throw ValidationError("DensityMatrix: factor dimensions multiply to " +
                          std::to_string(product_of(dims_)) + ", matrix has dimension " +
                          std::to_string(mat_.dim()));
  }
  const StateDiagnostics d = diagnostics();
  if (d.hermiticity_error > kStateTolerance) throw ValidationError("DensityMatrix: not Hermitian");
  if (d.trace_error > kStateTolerance) throw ValidationError("DensityMatrix: trace is not 1");
  if (d.min_eigenvalue < -kStateTolerance) {
    throw ValidationError("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> amplitudes,
                                  std::vector<std::size_t> dims) {
  const std::size_t n = amplitudes.size();
  if (n == 0) throw ValidationError("DensityMatrix::pure: empty amplitude vector");
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
  }
  return DensityMatrix(std::move(m), std::move(dims));
}

DensityMatrix DensityMatrix::basis(std::span<const std::size_t> digits,
                                   std::vector<std::size_t> dims) {
  if (digits.size() != dims.size()) {
    throw ValidationError("DensityMatrix::basis: one digit per factor required");
  }
  std::size_t index = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (digits[f] >= dims[f]) throw ValidationError("DensityMatrix::basis: digit out of range");
    index = index * dims[f] + digits[f];
  }
  ComplexMatrix m(product_of(dims));
  m(index, index) = 1.0;
  return DensityMatrix(Trusted{}, std::move(m), std::move(dims));
}

DensityMatrix DensityMatrix::product(const DensityMatrix& a, const DensityMatrix& b,
                                     std::size_t cap) {
  std::vector<std::size_t> dims(a.dims_);
  dims.insert(dims.end(), b.dims_.begin(), b.dims_.end());
  return DensityMatrix(Trusted{}, tensor(a.mat_, b.mat_, cap), std::move(dims));
}

StateDiagnostics DensityMatrix::diagnostics() const {
  StateDiagnostics d;
  d.hermiticity_error = hermiticity_error(mat_);
  d.trace_error = std::abs(trace(mat_) - Complex{1.0, 0.0});
  d.min_eigenvalue = min_eigenvalue(mat_);
  return d;
}

DensityMatrix apply_unitary(const DensityMatrix& state, const ComplexMatrix& u,
                            std::span<const std::size_t> targets) {
  const FactorSplit split = checked_split(state.dims(), targets, u.dim(), "apply_unitary");
  if (!is_unitary(u)) throw ValidationError("apply_unitary: operator is not unitary");
  return DensityMatrix(DensityMatrix::Trusted{}, apply_local(state.mat_, u, u, split),
                       state.dims_);
}

DensityMatrix apply_hadamard(const DensityMatrix& state, std::size_t target) {
  const std::size_t targets[] = {target};
  const FactorSplit split = checked_split(state.dims(), targets, 2, "apply_hadamard");
  const ComplexMatrix h{{1.0, 1.0}, {1.0, -1.0}};
  ComplexMatrix out = apply_local(state.mat_, h, h, split);
  out *= 0.5;
  return DensityMatrix(DensityMatrix::Trusted{}, std::move(out), state.dims_);
}

DensityMatrix apply_kraus(const DensityMatrix& state, std::span<const ComplexMatrix> ops,
                          std::span<const std::size_t> targets) {
  if (ops.empty()) throw ValidationError("apply_kraus: empty Kraus set");
  const FactorSplit split = checked_split(state.dims(), targets, ops[0].dim(), "apply_kraus");
  ComplexMatrix completeness(ops[0].dim());
  for (const ComplexMatrix& k : ops) {
    if (k.dim() != ops[0].dim()) throw ValidationError("apply_kraus: mixed operator dimensions");
    completeness += adjoint(k) * k;
  }
  if (max_abs_diff(completeness, ComplexMatrix::identity(completeness.dim())) >
      kHermitianTolerance) {
    throw ValidationError("apply_kraus: Kraus set is not trace preserving");
  }
  ComplexMatrix out(state.dim());
  for (const ComplexMatrix& k : ops) out += apply_local(state.mat_, k, k, split);
  return DensityMatrix(DensityMatrix::Trusted{}, std::move(out), state.dims_);
}

std::vector<MeasurementBranch> measure_qubit(const DensityMatrix& state, std::size_t target) {
  if (target >= state.dims_.size() || state.dims_[target] != 2) {
    throw ValidationError("measure_qubit: target must be a two-level factor");
  }
  const std::size_t subset[] = {target};
  const FactorSplit split(state.dims_, subset);
  const std::size_t nr = split.rest_dim();
  const ComplexMatrix& rho = state.mat_;

  std::vector<MeasurementBranch> branches;
  branches.reserve(2);
  for (int outcome = 0; outcome < 2; ++outcome) {
    const auto b = static_cast<std::size_t>(outcome);
    double p = 0.0;
    for (std::size_t r = 0; r < nr; ++r) {
      const std::size_t n = split.index(r, b);
      p += rho(n, n).real();
    }
    p = std::clamp(p, 0.0, 1.0);
    MeasurementBranch branch{outcome, p, std::nullopt};
    if (p >= kProbabilityFloor) {
      ComplexMatrix post(rho.dim());
      for (std::size_t r = 0; r < nr; ++r) {
        const std::size_t i = split.index(r, b);
        for (std::size_t s = 0; s < nr; ++s) {
          const std::size_t j = split.index(s, b);
          post(i, j) = rho(i, j) / p;
        }
      }
      branch.post_state = DensityMatrix(DensityMatrix::Trusted{}, std::move(post), state.dims_);
    }
    branches.push_back(std::move(branch));
  }
  return branches;
}

DensityMatrix decohere_qubit(const DensityMatrix& state, std::size_t target) {
  if (target >= state.dims_.size() || state.dims_[target] != 2) {
    throw ValidationError("decohere_qubit: target must be a two-level factor");
  }
  const std::size_t subset[] = {target};
  const FactorSplit split(state.dims_, subset);
  const std::size_t nr = split.rest_dim();
  ComplexMatrix out(state.dim());
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t s = 0; s < nr; ++s) {
        out(split.index(r, b), split.index(s, b)) = state.mat_(split.index(r, b), split.index(s, b));
      }
    }
  }
  return DensityMatrix(DensityMatrix::Trusted{}, std::move(out), state.dims_);
}

DensityMatrix reduce(const DensityMatrix& state, std::span<const std::size_t> keep) {
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  std::vector<std::size_t> dims;
  for (std::size_t k : kept) {
    if (k >= state.dims_.size()) throw ValidationError("reduce: factor index out of range");
    dims.push_back(state.dims_[k]);
  }
  return DensityMatrix(DensityMatrix::Trusted{}, partial_trace(state.mat_, state.dims_, kept),
                       std::move(dims));
}

std::vector<std::uint64_t> sample_counts(std::span<const double> probs, std::uint64_t shots,
                                         std::uint64_t seed) {
  if (probs.empty()) throw ValidationError("sample_counts: empty distribution");
  std::vector<double> cumulative(probs.size());
  double running = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (!(probs[k] >= 0.0)) throw ValidationError("sample_counts: negative probability");
    running += probs[k];
    cumulative[k] = running;
  }
  if (std::abs(running - 1.0) > 1e-9) {
    throw ValidationError("sample_counts: probabilities do not sum to 1");
  }
  std::mt19937_64 engine(seed);
  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    std::size_t k = 0;
    while (k + 1 < cumulative.size() && u >= cumulative[k]) ++k;
    ++counts[k];
  }
  return counts;
}

namespace serial {

ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const std::size_t> dims,
                             std::span<const std::size_t> targets) {
  const FactorSplit split = checked_split(dims, targets, op.dim(), "embed_operator");
  ComplexMatrix full(split.total_dim());
  for (std::size_t r = 0; r < split.rest_dim(); ++r) {
    for (std::size_t s = 0; s < split.sub_dim(); ++s) {
      for (std::size_t t = 0; t < split.sub_dim(); ++t) {
        full(split.index(r, s), split.index(r, t)) = op(s, t);
      }
    }
  }
  return full;
}

ComplexMatrix apply_unitary(const ComplexMatrix& rho, const ComplexMatrix& u,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> targets) {
  const ComplexMatrix full = embed_operator(u, dims, targets);
  return serial::matmul(serial::matmul(full, rho), adjoint(full));
}

}  // namespace serial

}  // namespace dnoise
