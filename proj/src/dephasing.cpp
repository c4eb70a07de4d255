#include "dnoise/dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dnoise/errors.hpp"

namespace dnoise {

ConditionalPropagators::ConditionalPropagators(ComplexMatrix w0, ComplexMatrix w1, double time)
    : w0_(std::move(w0)), w1_(std::move(w1)), time_(time) {
  if (w0_.dim() != w1_.dim()) {
    throw ValidationError("ConditionalPropagators: w0 and w1 differ in dimension");
  }
  if (!is_unitary(w0_) || !is_unitary(w1_)) {
    throw ValidationError("ConditionalPropagators: propagators must be unitary");
  }
}

ConditionalPropagators ConditionalPropagators::from_hamiltonians(const ComplexMatrix& h0,
                                                                 const ComplexMatrix& h1,
                                                                 double time) {
  return {herm_expm(h0, time), herm_expm(h1, time), time};
}

ConditionalPropagators ConditionalPropagators::doubled() const {
  return {w0_ * w0_, w1_ * w1_, 2.0 * time_};
}

std::array<ComplexMatrix, 2> phase_damping_kraus(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw ValidationError("phase_damping_kraus: c must lie in [0, 1], got " + std::to_string(c));
  }
  return {ComplexMatrix{{1.0, 0.0}, {0.0, c}},
          ComplexMatrix{{0.0, 0.0}, {0.0, std::sqrt(1.0 - c * c)}}};
}

std::array<ComplexMatrix, 2> dephasing_kraus(Complex c) {
  const double modulus = std::abs(c);
  if (!(modulus <= 1.0 + 1e-12)) {
    throw ValidationError("dephasing_kraus: |c| must not exceed 1");
  }
  const double leak = std::sqrt(std::max(0.0, 1.0 - modulus * modulus));
  return {ComplexMatrix{{1.0, 0.0}, {0.0, std::conj(c)}},
          ComplexMatrix{{0.0, 0.0}, {0.0, leak}}};
}

ComplexMatrix joint_dephasing_unitary(const ConditionalPropagators& a,
                                      const ConditionalPropagators& b, std::size_t cap) {
  const std::size_t da = a.env_dim();
  const std::size_t db = b.env_dim();
  if (da > cap / 4 / db) {
    throw CapacityError("joint_dephasing_unitary: dimension 4x" + std::to_string(da) + "x" +
                        std::to_string(db) + " exceeds cap " + std::to_string(cap));
  }
  const std::size_t block = da * db;
  ComplexMatrix u(4 * block);
  for (std::size_t i = 0; i < 2; ++i) {
    const ComplexMatrix& wa = i == 0 ? a.w0() : a.w1();
    for (std::size_t j = 0; j < 2; ++j) {
      const ComplexMatrix& wb = j == 0 ? b.w0() : b.w1();
      const std::size_t offset = (2 * i + j) * block;
      const ComplexMatrix env = tensor(wa, wb, cap);
      for (std::size_t r = 0; r < block; ++r) {
        for (std::size_t s = 0; s < block; ++s) u(offset + r, offset + s) = env(r, s);
      }
    }
  }
  return u;
}

namespace {

void require_env_match(const ConditionalPropagators& props, const DensityMatrix& env_state) {
  if (env_state.dim() != props.env_dim()) {
    throw ValidationError("environment state dimension " + std::to_string(env_state.dim()) +
                          " does not match propagator dimension " +
                          std::to_string(props.env_dim()));
  }
}

Complex expectation_of_overlap(const ComplexMatrix& rho, const ComplexMatrix& w0,
                               const ComplexMatrix& w1) {
  return trace(rho * (adjoint(w1) * w0));
}

}  // namespace

Complex factor_c(const ConditionalPropagators& props, const DensityMatrix& env_state) {
  require_env_match(props, env_state);
  return expectation_of_overlap(env_state.matrix(), props.w0(), props.w1());
}

Complex factor_d2(const ConditionalPropagators& props, const DensityMatrix& env_state) {
  require_env_match(props, env_state);
  const ConditionalPropagators twice = props.doubled();
  return expectation_of_overlap(env_state.matrix(), twice.w0(), twice.w1());
}

DephasingFactors dephasing_factors(const ConditionalPropagators& props,
                                   const DensityMatrix& env_state) {
  return {factor_c(props, env_state), factor_d2(props, env_state), props.time()};
}

}  // namespace dnoise
