#pragma once

// Two representations of pure dephasing of a qubit in its computational
// (pointer) basis:
//
//  * a phase-damping Kraus pair parameterized by the decoherence factor c, and
//  * conditional environment propagators w0, w1 (the environment evolves with
//    w_k while the qubit sits in |k>), combined for two qubits into the joint
//    unitary sum_ij |ij><ij| (x) w_i^A (x) w_j^B.
//
// Free qubit evolution is not modelled; the qubit energies are taken as zero.

#include <array>
#include <vector>

#include "dnoise/linalg.hpp"
#include "dnoise/state.hpp"

namespace dnoise {

class ConditionalPropagators {
 public:
  // Both operators must be unitary (1e-9) and of equal dimension.
  ConditionalPropagators(ComplexMatrix w0, ComplexMatrix w1, double time);

  // Propagators generated by time-independent Hamiltonians over `time`:
  // w_k = exp(-i h_k time).
  static ConditionalPropagators from_hamiltonians(const ComplexMatrix& h0,
                                                  const ComplexMatrix& h1, double time);

  const ComplexMatrix& w0() const noexcept { return w0_; }
  const ComplexMatrix& w1() const noexcept { return w1_; }
  std::size_t env_dim() const noexcept { return w0_.dim(); }
  double time() const noexcept { return time_; }

  // The same evolution applied twice in a row, i.e. the propagators at 2t.
  ConditionalPropagators doubled() const;

 private:
  ComplexMatrix w0_;
  ComplexMatrix w1_;
  double time_;
};

// One qubit's environment: conditional propagators plus its initial state.
struct QubitEnvironment {
  ConditionalPropagators props;
  DensityMatrix state;
};

// c multiplies the qubit coherence <0|rho|1> after one dephasing process.
// Re(d2_factor) is the two-process factor d^2 entering the repeated-run formulas.
struct DephasingFactors {
  Complex c{1.0, 0.0};
  Complex d2_factor{1.0, 0.0};
  double time = 0.0;

  double d2() const noexcept { return d2_factor.real(); }
};

// E0 = diag(1, c), E1 = diag(0, sqrt(1 - c^2)) for real c in [0, 1].
std::array<ComplexMatrix, 2> phase_damping_kraus(double c);

// Diagonal Kraus pair that multiplies <0|rho|1> by an arbitrary complex c with
// |c| <= 1: E0 = diag(1, conj(c)), E1 = diag(0, sqrt(1 - |c|^2)). Equivalent to
// phase damping with |c| followed by the phase gate diag(1, exp(-i arg c)); for
// real c in [0, 1] it is exactly phase_damping_kraus(c).
std::array<ComplexMatrix, 2> dephasing_kraus(Complex c);

// Joint unitary on qubitA (x) qubitB (x) envA (x) envB.
ComplexMatrix joint_dephasing_unitary(const ConditionalPropagators& a,
                                      const ConditionalPropagators& b,
                                      std::size_t cap = kDefaultDimensionCap);

// Tr[rho w1^dagger w0].
Complex factor_c(const ConditionalPropagators& props, const DensityMatrix& env_state);

// Tr[rho (w1 w1)^dagger (w0 w0)]: the single-process factor for twice the duration.
Complex factor_d2(const ConditionalPropagators& props, const DensityMatrix& env_state);

DephasingFactors dephasing_factors(const ConditionalPropagators& props,
                                   const DensityMatrix& env_state);

}  // namespace dnoise
