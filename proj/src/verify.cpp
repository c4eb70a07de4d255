#include "dnoise/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "dnoise/deutsch.hpp"
#include "dnoise/env_models.hpp"

namespace dnoise {

namespace {

CheckResult make(std::string name, double error, double tol) {
  return {std::move(name), error, tol, error <= tol};
}

std::vector<double> unit_grid(int n) {
  std::vector<double> out;
  for (int k = 0; k <= n; ++k) out.push_back(static_cast<double>(k) / n);
  return out;
}

SpinBathSpec z_bath(std::initializer_list<double> couplings) {
  SpinBathSpec bath;
  int label = 1;
  for (double a : couplings) bath.spins.push_back({{0.0, 0.0, a}, 0.0, label++});
  return bath;
}

SpinBathSpec phase_free_bath(std::initializer_list<Vec3> couplings) {
  SpinBathSpec bath;
  int label = 1;
  for (const Vec3& a : couplings) bath.spins.push_back({a, 0.0, label++});
  return bath;
}

// Rounding can push a unit-modulus factor a hair past 1.
double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

struct EngineErrors {
  double two_cycle = 0.0;
  double one_cycle = 0.0;
};

EngineErrors joint_against_formulas(const SpinBathSpec& bath_a, const SpinBathSpec& bath_b,
                                    int points, double t_max) {
  EngineErrors err;
  for (int k = 0; k < points; ++k) {
    const double t = t_max * k / (points - 1);
    const QubitEnvironment env_a = joint_environment(bath_a, t);
    const QubitEnvironment env_b = joint_environment(bath_b, t);
    const DephasingFactors fa = bath_factors(bath_a, t);
    const DephasingFactors fb = bath_factors(bath_b, t);
    for (FunctionId f : FunctionId::all()) {
      const ProbabilityTable joint = run_cycles_joint(f, env_a, env_b, 2);
      const ProbabilityTable formula = two_cycle_probs_quantum(
          f, clamp_unit(fa.c.real()), clamp_unit(fb.c.real()), clamp_unit(fa.d2()),
          clamp_unit(fb.d2()));
      err.two_cycle = std::max(err.two_cycle, max_difference(joint, formula));
      const ProbabilityTable kraus = run_cycles_kraus(f, fa.c, fb.c, 1);
      const ProbabilityTable joint1 = run_cycles_joint(f, env_a, env_b, 1);
      err.one_cycle = std::max(err.one_cycle, max_difference(joint1, kraus));
    }
  }
  return err;
}

double table_invariant_error(const ProbabilityTable& t) {
  double err = std::abs(t.p_first[0] + t.p_first[1] - 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    if (t.p_cond[i]) err = std::max(err, std::abs((*t.p_cond[i])[0] + (*t.p_cond[i])[1] - 1.0));
    total += t.p_joint[i][0] + t.p_joint[i][1];
  }
  return std::max(err, std::abs(total - 1.0));
}

}  // namespace

std::vector<CheckResult> run_verification() {
  std::vector<CheckResult> results;
  const auto grid = unit_grid(10);

  {
    double err = 0.0;
    double invariants = 0.0;
    for (FunctionId f : FunctionId::all()) {
      for (double ca : grid) {
        for (double cb : grid) {
          const ProbabilityTable numeric = run_cycles_kraus(f, ca, cb, 2);
          err = std::max(err, max_difference(numeric, two_cycle_probs_classical(f, ca, cb)));
          invariants = std::max(invariants, table_invariant_error(numeric));
        }
      }
    }
    results.push_back(make("kraus engine vs classical closed form (11x11 grid)", err, 1e-12));
    results.push_back(make("probability table invariants (kraus engine)", invariants, 1e-12));
  }

  {
    const EngineErrors single = joint_against_formulas(z_bath({1.3}), z_bath({0.7}), 50, 10.0);
    const EngineErrors pair =
        joint_against_formulas(phase_free_bath({{0.4, -0.2, 0.9}, {0.3, 0.1, -0.5}}),
                               phase_free_bath({{-0.6, 0.0, 0.2}, {0.1, 0.5, 0.35}}), 50, 10.0);
    results.push_back(
        make("joint engine vs quantum closed form (single-spin environments)", single.two_cycle,
             1e-10));
    results.push_back(
        make("joint engine vs quantum closed form (two-spin environments)", pair.two_cycle, 1e-10));
    results.push_back(make("one-cycle agreement of joint and kraus engines",
                           std::max(single.one_cycle, pair.one_cycle), 1e-10));
  }

  {
    double err = 0.0;
    const auto dense = unit_grid(100);
    for (FunctionId f : FunctionId::all()) {
      for (double ca : dense) {
        for (double cb : dense) {
          err = std::max(err, max_difference(two_cycle_probs_quantum(f, ca, cb, ca * ca, cb * cb),
                                             two_cycle_probs_exponential(f, ca, cb)));
        }
      }
    }
    results.push_back(make("quantum closed form with d2 = c^2 vs exponential form", err, 1e-12));
  }

  {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coupling(-1.0, 1.0);
    std::uniform_real_distribution<double> field(0.0, 2.0);
    double factor_err = 0.0;
    double product_err = 0.0;
    for (double p : {0.0, 0.1, 1.0}) {
      for (int trial = 0; trial < 20; ++trial) {
        SpinBathSpec bath;
        bath.zeeman = field(rng);
        for (int k = 0; k < 3; ++k) {
          bath.spins.push_back({{coupling(rng), coupling(rng), coupling(rng)}, p, k + 1});
        }
        SpinBathSpec head = bath;
        head.spins.resize(1);
        SpinBathSpec tail = bath;
        tail.spins.erase(tail.spins.begin());
        for (double t : {0.0, 0.7, 3.1, 12.5}) {
          const DephasingFactors closed = bath_factors(bath, t);
          const QubitEnvironment brute = joint_environment(bath, t);
          factor_err = std::max(factor_err, std::abs(closed.c - factor_c(brute.props, brute.state)));
          factor_err =
              std::max(factor_err, std::abs(closed.d2_factor - factor_d2(brute.props, brute.state)));
          const DephasingFactors a = bath_factors(head, t);
          const DephasingFactors b = bath_factors(tail, t);
          product_err = std::max(product_err, std::abs(closed.c - a.c * b.c));
          product_err = std::max(product_err, std::abs(closed.d2_factor - a.d2_factor * b.d2_factor));
        }
      }
    }
    results.push_back(make("bath factors vs brute-force 8-level environment", factor_err, 1e-10));
    results.push_back(make("bath factor product law over sub-baths", product_err, 1e-12));
  }

  {
    double closed = 0.0;
    double numeric = 0.0;
    for (FunctionId f : {FunctionId(0), FunctionId(3)}) {
      for (double ca : grid) {
        const ProbabilityTable ref_k = run_cycles_kraus(f, ca, 1.0, 2);
        const ProbabilityTable ref_c = two_cycle_probs_classical(f, ca, 1.0);
        const ProbabilityTable ref_q = two_cycle_probs_quantum(f, ca, 1.0, ca * ca, 1.0);
        for (double cb : grid) {
          numeric = std::max(numeric, max_difference(ref_k, run_cycles_kraus(f, ca, cb, 2)));
          closed = std::max(closed, max_difference(ref_c, two_cycle_probs_classical(f, ca, cb)));
          closed = std::max(closed,
                            max_difference(ref_q, two_cycle_probs_quantum(f, ca, cb, ca * ca, cb)));
        }
      }
    }
    results.push_back(make("constant functions ignore qubit-B noise (closed forms)", closed, 0.0));
    // The B-diagonal is rescaled by c^2 + (1 - c^2), which rounds.
    results.push_back(make("constant functions ignore qubit-B noise (kraus engine)", numeric,
                           4.0 * std::numeric_limits<double>::epsilon()));
  }

  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    double err = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      ComplexMatrix h(4);
      for (std::size_t i = 0; i < 4; ++i) {
        h(i, i) = 3.0 * entry(rng);
        for (std::size_t j = i + 1; j < 4; ++j) {
          h(i, j) = Complex{2.0 * entry(rng), 2.0 * entry(rng)};
          h(j, i) = std::conj(h(i, j));
        }
      }
      const double s = 5.0 * entry(rng);
      const double t = 5.0 * entry(rng);
      err = std::max(err, unitarity_error(herm_expm(h, s)));
      err = std::max(err, max_abs_diff(herm_expm(h, s) * herm_expm(h, t), herm_expm(h, s + t)));
    }
    results.push_back(make("hermitian exponential unitarity and semigroup law", err, 1e-10));
  }

  return results;
}

std::string format_report(const std::vector<CheckResult>& results) {
  std::string out;
  int failed = 0;
  for (const CheckResult& r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "%s  %-64s max error %.3e (tolerance %.1e)\n",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.max_error, r.tolerance);
    out += line;
    if (!r.passed) ++failed;
  }
  out += failed == 0 ? "all " + std::to_string(results.size()) + " checks passed\n"
                     : std::to_string(failed) + " of " + std::to_string(results.size()) +
                           " checks failed\n";
  return out;
}

}  // namespace dnoise
