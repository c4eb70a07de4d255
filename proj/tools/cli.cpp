// dnoise: parameter sweeps, NV time series, self-checks and single-point tables.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or config error,
// 3 data-file error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "dnoise/errors.hpp"
#include "dnoise/sweep.hpp"
#include "dnoise/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "output: cannot write '" << path << "'\n";
    return kExitData;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  dnoise::RunConfig config;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  CLI::App app{"Deutsch's algorithm under classical and quantum pure dephasing"};
  app.set_config("--config", "", "TOML/INI file with any of the options below; flags win");
  app.require_subcommand(1, 1);

  app.add_option("--functions", config.functions, "Function ids 0..3")->delimiter(',');
  app.add_option("--engine", config.engines, "Engines (default depends on subcommand)")
      ->delimiter(',');
  app.add_option("--start", config.grid.start, "Grid start (c or t in us)");
  app.add_option("--stop", config.grid.stop, "Grid stop");
  app.add_option("--count", config.grid.count, "Number of grid points");
  app.add_option("--bath", config.bath_a, "Bath table for qubit A (default: bundled)");
  app.add_option("--bath-b", config.bath_b, "Bath table for qubit B (default: same as A)");
  app.add_option("--magnetic-field-T,--magnetic_field_T", config.magnetic_field_t,
                 "Field along z in tesla");
  app.add_option("--polarization", config.polarization, "Nuclear polarization p");
  app.add_option("--angular-zeeman,--angular_zeeman", config.angular_zeeman,
                 "Use 2*pi*gamma*B for the Zeeman frequency");
  app.add_option("-o,--output", config.output, "Output file (default: stdout)");
  auto* shots_opt = app.add_option("--shots", shots, "Sample this many two-cycle runs");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed for --shots");
  app.add_option("--cA,--c_a", config.c_a, "table: c of qubit A");
  app.add_option("--cB,--c_b", config.c_b, "table: c of qubit B");
  app.add_option("--d2A,--d2_a", config.d2_a, "table: d^2 of qubit A");
  app.add_option("--d2B,--d2_b", config.d2_b, "table: d^2 of qubit B");

  for (const char* name : {"sweep-c", "nv-sweep", "verify", "table"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("sweep-c")->description("Probabilities over a grid of c = cA = cB");
  app.get_subcommand("nv-sweep")->description("Probabilities over time for NV spin baths");
  app.get_subcommand("verify")->description("Run the cross-engine self-checks");
  app.get_subcommand("table")->description("Closed-form probabilities at one parameter point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  if (*shots_opt) config.shots = shots;
  if (*seed_opt) config.seed = seed;

  try {
    config.validate();
    if (config.subcommand == "verify") {
      const auto results = dnoise::run_verification();
      const int rc = emit(dnoise::format_report(results), config.output);
      if (rc != 0) return rc;
      for (const auto& r : results) {
        if (!r.passed) return kExitVerifyFailed;
      }
      return 0;
    }
    std::vector<dnoise::SweepRecord> records;
    if (config.subcommand == "sweep-c") {
      records = dnoise::sweep_c(config);
    } else if (config.subcommand == "nv-sweep") {
      records = dnoise::nv_sweep(config);
    } else {
      records = dnoise::table_point(config);
    }
    return emit(dnoise::to_csv(records, config), config.output);
  } catch (const dnoise::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const dnoise::ParseError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const dnoise::ValidationError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
}
