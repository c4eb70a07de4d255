#include "dnoise/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace dnoise {

namespace {

bool contains(const std::vector<std::string>& allowed, const std::string& value) {
  return std::find(allowed.begin(), allowed.end(), value) != allowed.end();
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

const std::vector<std::string>& engines_for(const std::string& subcommand) {
  static const std::vector<std::string> sweep{"classical", "quantum-exponential"};
  static const std::vector<std::string> nv{"classical-from-bath", "quantum-from-bath",
                                           "exponential-from-bath"};
  static const std::vector<std::string> table{"classical", "quantum", "quantum-exponential"};
  static const std::vector<std::string> none;
  if (subcommand == "sweep-c") return sweep;
  if (subcommand == "nv-sweep") return nv;
  if (subcommand == "table") return table;
  return none;
}

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

ProbabilityTable analytic_table(const std::string& engine, FunctionId f, double c_a, double c_b,
                                double d2_a, double d2_b) {
  if (engine == "classical" || engine == "classical-from-bath") {
    return two_cycle_probs_classical(f, c_a, c_b);
  }
  if (engine == "quantum" || engine == "quantum-from-bath") {
    return two_cycle_probs_quantum(f, c_a, c_b, d2_a, d2_b);
  }
  return two_cycle_probs_exponential(f, c_a, c_b);
}

void attach_counts(std::vector<SweepRecord>& records, const RunConfig& config) {
  if (!config.shots) return;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& pj = records[k].table.p_joint;
    const double probs[] = {pj[0][0], pj[0][1], pj[1][0], pj[1][1]};
    // Joint tables sum to one up to rounding; renormalise before sampling.
    double total = probs[0] + probs[1] + probs[2] + probs[3];
    const double normalized[] = {probs[0] / total, probs[1] / total, probs[2] / total,
                                 probs[3] / total};
    const auto counts = sample_counts(normalized, *config.shots, *config.seed + k);
    records[k].counts = std::array<std::uint64_t, 4>{counts[0], counts[1], counts[2], counts[3]};
  }
}

// Arbitrary (c, d2) pairs need not come from any environment; such points can
// push the closed forms outside [0, 1].
void check_physical(const SweepRecord& r) {
  const ProbabilityTable& t = r.table;
  std::vector<double> values{t.p_first[0], t.p_first[1]};
  for (std::size_t i = 0; i < 2; ++i) {
    if (t.p_cond[i]) values.insert(values.end(), t.p_cond[i]->begin(), t.p_cond[i]->end());
  }
  for (double v : values) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
      throw UsageError("c_A/c_B/d2_A/d2_B: " + r.engine + " gives probability " + format_value(v) +
                       " for function " + std::to_string(r.function.n()) +
                       "; these factors are not realisable together");
    }
  }
}

void append(std::string& line, const std::string& field) {
  if (!line.empty()) line += ',';
  line += field;
}

}  // namespace

std::vector<double> GridSpec::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = start + step * k;
  out.back() = stop;
  return out;
}

void RunConfig::validate() {
  static const std::vector<std::string> subcommands{"sweep-c", "nv-sweep", "verify", "table"};
  if (!contains(subcommands, subcommand)) {
    throw UsageError("subcommand: expected one of " + join(subcommands) + ", got '" +
                     subcommand + "'");
  }
  if (subcommand == "verify") return;

  if (functions.empty()) throw UsageError("functions: at least one function id required");
  for (int n : functions) {
    if (n < 0 || n > 3) throw UsageError("functions: ids must be 0..3, got " + std::to_string(n));
  }
  const auto& allowed = engines_for(subcommand);
  if (engines.empty()) {
    engines = allowed;
    if (subcommand == "nv-sweep") engines.pop_back();
  }
  for (const auto& e : engines) {
    if (!contains(allowed, e)) {
      throw UsageError("engine: '" + e + "' not valid for " + subcommand + " (choose from " +
                       join(allowed) + ")");
    }
  }
  if (subcommand != "table") {
    if (grid.count < 2) throw UsageError("count: grid needs at least 2 points");
    if (!(grid.start < grid.stop)) throw UsageError("start/stop: start must be below stop");
  }
  if (subcommand == "sweep-c" && (grid.start < 0.0 || grid.stop > 1.0)) {
    throw UsageError("start/stop: c grid must lie within [0, 1]");
  }
  if (subcommand == "nv-sweep") {
    if (grid.start < 0.0) throw UsageError("start: time grid must start at t >= 0");
    if (!(std::abs(polarization) <= 1.0)) throw UsageError("polarization: must lie in [-1, 1]");
    if (!std::isfinite(magnetic_field_t)) throw UsageError("magnetic_field_T: must be finite");
  }
  if (subcommand == "table") {
    const std::pair<const char*, double> point[] = {
        {"c_A", c_a}, {"c_B", c_b}, {"d2_A", d2_a}, {"d2_B", d2_b}};
    for (const auto& [name, v] : point) {
      if (!(v >= -1.0 && v <= 1.0)) throw UsageError(std::string(name) + ": must lie in [-1, 1]");
    }
  }
  if (shots) {
    if (*shots == 0) throw UsageError("shots: must be positive");
    if (!seed) throw UsageError("seed: required when shots is set");
  }
}

std::string bundled_bath_path() { return std::string(DNOISE_DATA_DIR) + "/nv_bath_32.csv"; }

std::vector<SweepRecord> sweep_c(const RunConfig& config) {
  const std::vector<double> cs = config.grid.points();
  const std::size_t per_point = config.engines.size() * config.functions.size();
  std::vector<SweepRecord> records;
  records.reserve(cs.size() * per_point);
  for (double c : cs) {
    for (const auto& engine : config.engines) {
      for (int n : config.functions) {
        records.push_back({engine, FunctionId(n), c, std::nullopt, {}, std::nullopt});
      }
    }
  }
  const auto total = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    SweepRecord& r = records[static_cast<std::size_t>(k)];
    r.table = analytic_table(r.engine, r.function, r.x, r.x, r.x * r.x, r.x * r.x);
  }
  attach_counts(records, config);
  return records;
}

std::vector<SweepRecord> nv_sweep(const RunConfig& config) {
  const double zeeman = zeeman_frequency(kGammaCarbon13, config.magnetic_field_t,
                                         config.angular_zeeman);
  const std::string path_a = config.bath_a.empty() ? bundled_bath_path() : config.bath_a;
  const std::string path_b = config.bath_b.empty() ? path_a : config.bath_b;
  const SpinBathSpec bath_a = load_bath_file(path_a, config.polarization, zeeman);
  const SpinBathSpec bath_b =
      path_b == path_a ? bath_a : load_bath_file(path_b, config.polarization, zeeman);

  const std::vector<double> times = config.grid.points();
  const std::vector<DephasingFactors> fa = bath_factors(bath_a, times);
  const std::vector<DephasingFactors> fb = bath_factors(bath_b, times);

  std::vector<SweepRecord> records;
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (const auto& engine : config.engines) {
      for (int n : config.functions) {
        records.push_back(
            {engine, FunctionId(n), times[k], BathFactorPair{fa[k], fb[k]}, {}, std::nullopt});
      }
    }
  }
  const auto total = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    SweepRecord& r = records[static_cast<std::size_t>(k)];
    const BathFactorPair& f = *r.factors;
    // Closed forms take real factors; rounding can push |Re c| a hair past 1.
    r.table = analytic_table(r.engine, r.function, clamp_unit(f.a.c.real()),
                             clamp_unit(f.b.c.real()), clamp_unit(f.a.d2()),
                             clamp_unit(f.b.d2()));
  }
  attach_counts(records, config);
  return records;
}

std::vector<SweepRecord> table_point(const RunConfig& config) {
  std::vector<SweepRecord> records;
  for (const auto& engine : config.engines) {
    for (int n : config.functions) {
      const FunctionId f(n);
      records.push_back({engine, f, config.c_a, std::nullopt,
                         analytic_table(engine, f, config.c_a, config.c_b, config.d2_a,
                                        config.d2_b),
                         std::nullopt});
      check_physical(records.back());
    }
  }
  attach_counts(records, config);
  return records;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string to_csv(const std::vector<SweepRecord>& records, const RunConfig& config) {
  std::string header = "engine,function,kind";
  if (config.subcommand == "nv-sweep") {
    header +=
        ",t_us,cA_re,cA_im,cA_abs,d2A_re,d2A_im,cB_re,cB_im,cB_abs,d2B_re,d2B_im";
  } else if (config.subcommand == "table") {
    header += ",cA,cB,d2A,d2B";
  } else {
    header += ",c";
  }
  header += ",p0,p1,p00,p01,p10,p11,P00,P01,P10,P11";
  if (config.shots) header += ",N00,N01,N10,N11";

  std::string out = header + "\n";
  for (const SweepRecord& r : records) {
    std::string line;
    append(line, r.engine);
    append(line, std::to_string(r.function.n()));
    append(line, to_string(r.function.kind()));
    if (config.subcommand == "nv-sweep") {
      append(line, format_value(r.x));
      for (const DephasingFactors* f : {&r.factors->a, &r.factors->b}) {
        append(line, format_value(f->c.real()));
        append(line, format_value(f->c.imag()));
        append(line, format_value(std::abs(f->c)));
        append(line, format_value(f->d2_factor.real()));
        append(line, format_value(f->d2_factor.imag()));
      }
    } else if (config.subcommand == "table") {
      for (double v : {config.c_a, config.c_b, config.d2_a, config.d2_b}) {
        append(line, format_value(v));
      }
    } else {
      append(line, format_value(r.x));
    }
    append(line, format_value(r.table.p_first[0]));
    append(line, format_value(r.table.p_first[1]));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        append(line, r.table.p_cond[i] ? format_value((*r.table.p_cond[i])[j]) : kUndefinedToken);
      }
    }
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) append(line, format_value(r.table.p_joint[i][j]));
    }
    if (r.counts) {
      for (std::uint64_t n : *r.counts) append(line, std::to_string(n));
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace dnoise
