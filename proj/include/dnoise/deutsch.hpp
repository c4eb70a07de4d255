#pragma once

// Deutsch's algorithm run once or twice under pure dephasing.
//
// Circuit (qubit A = factor 0, qubit B = factor 1), starting from |0>|1>:
//   cycle 1: H (x) H, dephasing, U_f, H on A, measure A
//   between: X on A if the first outcome was 1
//   cycle 2: H on A, dephasing, U_f, H on A, measure A
// Dephasing acts once per cycle, right before U_f, with the same strength in
// both cycles. Outcome 0 is correct for constant functions and wrong for
// balanced ones.
//
// Four ways of obtaining outcome probabilities are provided: closed forms for
// memoryless (Kraus) noise, closed forms for noise from a persistent quantum
// environment, numeric density-matrix execution with Kraus maps, and numeric
// execution of the qubits together with their environments.

#include <array>
#include <optional>
#include <variant>

#include "dnoise/dephasing.hpp"
#include "dnoise/linalg.hpp"
#include "dnoise/state.hpp"

namespace dnoise {

enum class FunctionKind { constant, balanced };

class FunctionId {
 public:
  // n in {0, 1, 2, 3}; 0 and 3 are constant, 1 and 2 balanced.
  explicit FunctionId(int n);

  int n() const noexcept { return n_; }
  FunctionKind kind() const noexcept {
    return (n_ == 0 || n_ == 3) ? FunctionKind::constant : FunctionKind::balanced;
  }

  static std::array<FunctionId, 4> all();

  friend bool operator==(FunctionId, FunctionId) = default;

 private:
  int n_;
};

const char* to_string(FunctionKind kind);

// Conditional row i: probabilities of second outcome 0 and 1 given first outcome i.
using ConditionalRow = std::array<double, 2>;

struct ProbabilityTable {
  int cycles = 2;
  std::array<double, 2> p_first{};
  // Empty when the conditioning outcome has probability below kProbabilityFloor,
  // and always empty for single-cycle tables.
  std::array<std::optional<ConditionalRow>, 2> p_cond{};
  // P_ij = p_i p_ij; zero on undefined rows.
  std::array<std::array<double, 2>, 2> p_joint{};

  bool defined(int i) const { return p_cond[static_cast<std::size_t>(i)].has_value(); }
};

// Largest absolute entrywise difference over p_first, defined p_cond rows and
// p_joint. Infinity if the tables disagree on cycles or on which rows are defined.
double max_difference(const ProbabilityTable& a, const ProbabilityTable& b);

ComplexMatrix hadamard();
ComplexMatrix pauli_x();
ComplexMatrix u_fn(FunctionId f);

// (p0, p1) after one cycle. Accepts factors in [-1, 1].
std::array<double, 2> single_cycle_probs_analytic(FunctionId f, double c_a, double c_b);

// Two cycles with memoryless phase damping.
ProbabilityTable two_cycle_probs_classical(FunctionId f, double c_a, double c_b);

// Two cycles with a persistent quantum environment; d2 are the two-process factors.
ProbabilityTable two_cycle_probs_quantum(FunctionId f, double c_a, double c_b, double d2_a,
                                         double d2_b);

// two_cycle_probs_quantum specialised to d^2 = c^2 (exponential dephasing).
ProbabilityTable two_cycle_probs_exponential(FunctionId f, double c_a, double c_b);

// Numeric two-qubit density-matrix run with phase-damping Kraus maps; c in [0, 1].
ProbabilityTable run_cycles_kraus(FunctionId f, double c_a, double c_b, int cycles);
// Complex factors go through dephasing_kraus, so the coherence picks up the phase of c.
ProbabilityTable run_cycles_kraus(FunctionId f, Complex c_a, Complex c_b, int cycles);

// Numeric run of qubitA (x) qubitB (x) envA (x) envB. The environments are
// never traced out or reset between the cycles.
ProbabilityTable run_cycles_joint(FunctionId f, const QubitEnvironment& env_a,
                                  const QubitEnvironment& env_b, int cycles,
                                  std::size_t cap = kDefaultDimensionCap);

struct ScalarNoise {
  double c_a = 1.0;
  double c_b = 1.0;
  double d2_a = 1.0;
  double d2_b = 1.0;
};

struct KrausNoise {
  double c_a = 1.0;
  double c_b = 1.0;
};

struct JointNoise {
  QubitEnvironment env_a;
  QubitEnvironment env_b;
};

using NoiseInput = std::variant<ScalarNoise, KrausNoise, JointNoise>;

enum class Engine { analytic_classical, analytic_quantum, analytic_exponential, kraus, joint };

const char* to_string(Engine engine);

// Dispatches to the matching operation. Analytic engines need ScalarNoise,
// `kraus` needs KrausNoise and `joint` needs JointNoise.
ProbabilityTable evaluate(Engine engine, FunctionId f, const NoiseInput& noise, int cycles);

}  // namespace dnoise
