#include "dnoise/deutsch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dnoise/errors.hpp"

namespace dnoise {

namespace {

constexpr std::size_t kQubitA[] = {0};
constexpr std::size_t kQubitB[] = {1};
constexpr std::size_t kBothQubits[] = {0, 1};
constexpr std::size_t kJointFactors[] = {0, 1, 2, 3};

void require_range(double value, double lo, double hi, const char* name) {
  if (!(value >= lo && value <= hi)) {
    throw ValidationError(std::string(name) + " = " + std::to_string(value) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

void require_cycles(int cycles) {
  if (cycles != 1 && cycles != 2) throw ValidationError("cycles must be 1 or 2");
}

// Fills conditional rows and joint probabilities from the two "repeat"
// conditionals; rows whose first outcome is (numerically) impossible stay undefined.
template <typename P00, typename P11>
ProbabilityTable assemble(std::array<double, 2> first, P00 p00, P11 p11) {
  ProbabilityTable t;
  t.cycles = 2;
  t.p_first = first;
  if (first[0] >= kProbabilityFloor) {
    const double q = p00();
    t.p_cond[0] = ConditionalRow{q, 1.0 - q};
    t.p_joint[0] = {first[0] * q, first[0] * (1.0 - q)};
  }
  if (first[1] >= kProbabilityFloor) {
    const double q = p11();
    t.p_cond[1] = ConditionalRow{1.0 - q, q};
    t.p_joint[1] = {first[1] * (1.0 - q), first[1] * q};
  }
  return t;
}

ProbabilityTable single_cycle_table(FunctionId f, double c_a, double c_b) {
  ProbabilityTable t;
  t.cycles = 1;
  t.p_first = single_cycle_probs_analytic(f, c_a, c_b);
  return t;
}

template <typename Noise>
ProbabilityTable run_circuit(FunctionId f, const DensityMatrix& initial, Noise&& noise,
                             int cycles) {
  const ComplexMatrix x = pauli_x();
  const ComplexMatrix u = u_fn(f);

  auto finish_cycle = [&](DensityMatrix s) {
    s = noise(s);
    s = apply_unitary(s, u, kBothQubits);
    s = apply_hadamard(s, 0);
    return measure_qubit(s, 0);
  };

  DensityMatrix s = apply_hadamard(initial, 0);
  s = apply_hadamard(s, 1);
  const auto first = finish_cycle(std::move(s));

  ProbabilityTable t;
  t.cycles = cycles;
  t.p_first = {first[0].probability, first[1].probability};
  if (cycles == 1) return t;

  for (std::size_t i = 0; i < 2; ++i) {
    if (first[i].negligible()) continue;
    DensityMatrix next = *first[i].post_state;
    if (i == 1) next = apply_unitary(next, x, kQubitA);
    next = apply_hadamard(next, 0);
    const auto second = finish_cycle(std::move(next));
    const ConditionalRow row{second[0].probability, second[1].probability};
    t.p_cond[i] = row;
    t.p_joint[i] = {t.p_first[i] * row[0], t.p_first[i] * row[1]};
  }
  return t;
}

DensityMatrix qubit_start(std::vector<std::size_t> dims) {
  std::vector<std::size_t> digits(dims.size(), 0);
  digits[1] = 1;
  return DensityMatrix::basis(digits, std::move(dims));
}

}  // namespace

FunctionId::FunctionId(int n) : n_(n) {
  if (n < 0 || n > 3) throw ValidationError("function index must be 0..3, got " + std::to_string(n));
}

std::array<FunctionId, 4> FunctionId::all() {
  return {FunctionId(0), FunctionId(1), FunctionId(2), FunctionId(3)};
}

const char* to_string(FunctionKind kind) {
  return kind == FunctionKind::constant ? "constant" : "balanced";
}

const char* to_string(Engine engine) {
  switch (engine) {
    case Engine::analytic_classical: return "classical";
    case Engine::analytic_quantum: return "quantum";
    case Engine::analytic_exponential: return "quantum-exponential";
    case Engine::kraus: return "kraus";
    case Engine::joint: return "joint";
  }
  return "unknown";
}

double max_difference(const ProbabilityTable& a, const ProbabilityTable& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a.cycles != b.cycles) return inf;
  double worst = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    worst = std::max(worst, std::abs(a.p_first[i] - b.p_first[i]));
    if (a.cycles == 1) continue;
    if (a.p_cond[i].has_value() != b.p_cond[i].has_value()) return inf;
    for (std::size_t j = 0; j < 2; ++j) {
      if (a.p_cond[i]) worst = std::max(worst, std::abs((*a.p_cond[i])[j] - (*b.p_cond[i])[j]));
      worst = std::max(worst, std::abs(a.p_joint[i][j] - b.p_joint[i][j]));
    }
  }
  return worst;
}

ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix{{s, s}, {s, -s}};
}

ComplexMatrix pauli_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }

ComplexMatrix u_fn(FunctionId f) {
  // |a>|b> -> |a>|f(a) xor b>, basis order |00>, |01>, |10>, |11>.
  const int f0 = (f.n() == 2 || f.n() == 3) ? 1 : 0;
  const int f1 = (f.n() == 1 || f.n() == 3) ? 1 : 0;
  ComplexMatrix u(4);
  for (int a = 0; a < 2; ++a) {
    const int fa = a == 0 ? f0 : f1;
    for (int b = 0; b < 2; ++b) {
      const auto in = static_cast<std::size_t>(2 * a + b);
      const auto out = static_cast<std::size_t>(2 * a + (fa ^ b));
      u(out, in) = 1.0;
    }
  }
  return u;
}

std::array<double, 2> single_cycle_probs_analytic(FunctionId f, double c_a, double c_b) {
  require_range(c_a, -1.0, 1.0, "c_A");
  require_range(c_b, -1.0, 1.0, "c_B");
  const double p0 =
      f.kind() == FunctionKind::constant ? 0.5 * (1.0 + c_a) : 0.5 * (1.0 - c_a * c_b);
  return {p0, 1.0 - p0};
}

ProbabilityTable two_cycle_probs_classical(FunctionId f, double c_a, double c_b) {
  const auto first = single_cycle_probs_analytic(f, c_a, c_b);
  if (f.kind() == FunctionKind::constant) {
    return assemble(
        first, [&] { return 0.5 + 0.5 * c_a; }, [&] { return 0.5 - 0.5 * c_a; });
  }
  const double ab = c_a * c_b;
  return assemble(
      first, [&] { return 0.5 + ab * (c_a - c_b) / (2.0 * (1.0 - ab)); },
      [&] { return 0.5 + ab * (c_a + c_b) / (2.0 * (1.0 + ab)); });
}

ProbabilityTable two_cycle_probs_quantum(FunctionId f, double c_a, double c_b, double d2_a,
                                         double d2_b) {
  require_range(d2_a, -1.0, 1.0, "d2_A");
  require_range(d2_b, -1.0, 1.0, "d2_B");
  const auto first = single_cycle_probs_analytic(f, c_a, c_b);
  if (f.kind() == FunctionKind::constant) {
    return assemble(
        first, [&] { return (3.0 + 4.0 * c_a + d2_a) / (4.0 * (1.0 + c_a)); },
        [&] { return (3.0 - 4.0 * c_a + d2_a) / (4.0 * (1.0 - c_a)); });
  }
  const double ab = c_a * c_b;
  return assemble(
      first,
      [&] {
        return (2.0 - 2.0 * ab - c_a + c_b - c_a * d2_b + d2_a * c_b) / (4.0 * (1.0 - ab));
      },
      [&] {
        return (2.0 + 2.0 * ab + c_a + c_b + c_a * d2_b + d2_a * c_b) / (4.0 * (1.0 + ab));
      });
}

ProbabilityTable two_cycle_probs_exponential(FunctionId f, double c_a, double c_b) {
  const auto first = single_cycle_probs_analytic(f, c_a, c_b);
  if (f.kind() == FunctionKind::constant) {
    return assemble(
        first, [&] { return 0.5 + 0.25 * (1.0 + c_a); }, [&] { return 0.5 + 0.25 * (1.0 - c_a); });
  }
  return assemble(
      first, [&] { return 0.5 - 0.25 * (c_a - c_b); }, [&] { return 0.5 + 0.25 * (c_a + c_b); });
}

ProbabilityTable run_cycles_kraus(FunctionId f, double c_a, double c_b, int cycles) {
  require_range(c_a, 0.0, 1.0, "c_A");
  require_range(c_b, 0.0, 1.0, "c_B");
  require_cycles(cycles);
  const auto ka = phase_damping_kraus(c_a);
  const auto kb = phase_damping_kraus(c_b);
  auto noise = [&](const DensityMatrix& s) {
    return apply_kraus(apply_kraus(s, ka, kQubitA), kb, kQubitB);
  };
  return run_circuit(f, qubit_start({2, 2}), noise, cycles);
}

ProbabilityTable run_cycles_kraus(FunctionId f, Complex c_a, Complex c_b, int cycles) {
  require_cycles(cycles);
  const auto ka = dephasing_kraus(c_a);
  const auto kb = dephasing_kraus(c_b);
  auto noise = [&](const DensityMatrix& s) {
    return apply_kraus(apply_kraus(s, ka, kQubitA), kb, kQubitB);
  };
  return run_circuit(f, qubit_start({2, 2}), noise, cycles);
}

ProbabilityTable run_cycles_joint(FunctionId f, const QubitEnvironment& env_a,
                                  const QubitEnvironment& env_b, int cycles, std::size_t cap) {
  require_cycles(cycles);
  if (env_a.state.dim() != env_a.props.env_dim() || env_b.state.dim() != env_b.props.env_dim()) {
    throw ValidationError("run_cycles_joint: environment state and propagators differ in size");
  }
  const ComplexMatrix u = joint_dephasing_unitary(env_a.props, env_b.props, cap);
  const DensityMatrix envs = DensityMatrix::product(
      DensityMatrix(env_a.state.matrix(), {env_a.state.dim()}),
      DensityMatrix(env_b.state.matrix(), {env_b.state.dim()}), cap);
  const DensityMatrix qubits = qubit_start({2, 2});
  const DensityMatrix initial = DensityMatrix::product(qubits, envs, cap);
  auto noise = [&](const DensityMatrix& s) { return apply_unitary(s, u, kJointFactors); };
  return run_circuit(f, initial, noise, cycles);
}

ProbabilityTable evaluate(Engine engine, FunctionId f, const NoiseInput& noise, int cycles) {
  require_cycles(cycles);
  auto scalar = [&]() -> const ScalarNoise& {
    if (const auto* s = std::get_if<ScalarNoise>(&noise)) return *s;
    throw ValidationError(std::string(to_string(engine)) + " engine needs scalar noise factors");
  };
  switch (engine) {
    case Engine::analytic_classical: {
      const auto& s = scalar();
      return cycles == 1 ? single_cycle_table(f, s.c_a, s.c_b)
                         : two_cycle_probs_classical(f, s.c_a, s.c_b);
    }
    case Engine::analytic_quantum: {
      const auto& s = scalar();
      return cycles == 1 ? single_cycle_table(f, s.c_a, s.c_b)
                         : two_cycle_probs_quantum(f, s.c_a, s.c_b, s.d2_a, s.d2_b);
    }
    case Engine::analytic_exponential: {
      const auto& s = scalar();
      return cycles == 1 ? single_cycle_table(f, s.c_a, s.c_b)
                         : two_cycle_probs_exponential(f, s.c_a, s.c_b);
    }
    case Engine::kraus: {
      const auto* k = std::get_if<KrausNoise>(&noise);
      if (k == nullptr) throw ValidationError("kraus engine needs Kraus noise factors");
      return run_cycles_kraus(f, k->c_a, k->c_b, cycles);
    }
    case Engine::joint: {
      const auto* j = std::get_if<JointNoise>(&noise);
      if (j == nullptr) throw ValidationError("joint engine needs environment specifications");
      return run_cycles_joint(f, j->env_a, j->env_b, cycles);
    }
  }
  throw ValidationError("unknown engine");
}

}  // namespace dnoise
