#pragma once

// Parameter sweeps behind the command-line front end, and their CSV form.
//
// CSV conventions: UTF-8, '.' decimal separator, 15 significant digits, a
// header row naming every column, and the literal token "undef" for
// conditional probabilities whose conditioning outcome has probability zero.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnoise/deutsch.hpp"
#include "dnoise/env_models.hpp"

namespace dnoise {

// Invalid run configuration; the message names the offending field.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kUndefinedToken = "undef";

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int count = 11;

  // Evenly spaced, both ends included.
  std::vector<double> points() const;
};

struct RunConfig {
  std::string subcommand;  // sweep-c | nv-sweep | verify | table
  std::vector<int> functions{0, 1, 2, 3};
  // sweep-c: classical, quantum-exponential
  // nv-sweep: classical-from-bath, quantum-from-bath, exponential-from-bath
  // table: classical, quantum, quantum-exponential
  std::vector<std::string> engines;
  GridSpec grid;
  std::string bath_a;  // empty: bundled 32-spin table
  std::string bath_b;  // empty: same as bath_a
  double magnetic_field_t = 0.1;
  double polarization = 0.1;
  bool angular_zeeman = true;
  std::string output;  // empty: stdout
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
  // Parameter point for `table`.
  double c_a = 1.0;
  double c_b = 1.0;
  double d2_a = 1.0;
  double d2_b = 1.0;

  // Fills defaulted engine lists and checks every field; throws UsageError.
  void validate();
};

// Factors of both qubits' environments at one time point.
struct BathFactorPair {
  DephasingFactors a;
  DephasingFactors b;
};

struct SweepRecord {
  std::string engine;
  FunctionId function;
  double x = 0.0;  // c for sweep-c, t in us for nv-sweep
  std::optional<BathFactorPair> factors;
  ProbabilityTable table;
  std::optional<std::array<std::uint64_t, 4>> counts;  // N00, N01, N10, N11
};

std::string bundled_bath_path();

// Every record for a sweep, in grid order, then engine, then function. Grid
// points are evaluated in parallel.
std::vector<SweepRecord> sweep_c(const RunConfig& config);
std::vector<SweepRecord> nv_sweep(const RunConfig& config);
std::vector<SweepRecord> table_point(const RunConfig& config);

std::string format_value(double v);
std::string to_csv(const std::vector<SweepRecord>& records, const RunConfig& config);

}  // namespace dnoise
