#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dnoise/errors.hpp"
#include "dnoise/sweep.hpp"

using namespace dnoise;

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  return out;
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::stringstream ss(csv);
  std::string line;
  while (std::getline(ss, line)) out.push_back(split(line));
  return out;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  FAIL("missing column " << name);
  return 0;
}

RunConfig config_for(const std::string& sub) {
  RunConfig c;
  c.subcommand = sub;
  return c;
}

}  // namespace

TEST_CASE("config validation names the field") {
  auto message = [](RunConfig c) -> std::string {
    try {
      c.validate();
    } catch (const UsageError& e) {
      return e.what();
    }
    return {};
  };
  RunConfig c = config_for("sweep-c");
  c.grid.count = 1;
  CHECK(message(c).rfind("count", 0) == 0);
  c = config_for("sweep-c");
  c.grid.start = 0.5;
  c.grid.stop = 0.5;
  CHECK(message(c).find("start") != std::string::npos);
  c = config_for("sweep-c");
  c.engines = {"quantum"};
  CHECK(message(c).rfind("engine", 0) == 0);
  c = config_for("nv-sweep");
  c.polarization = 2.0;
  CHECK(message(c).rfind("polarization", 0) == 0);
  c = config_for("table");
  c.shots = 0;
  c.seed = 1;
  CHECK(message(c).rfind("shots", 0) == 0);
  c = config_for("table");
  c.shots = 10;
  CHECK(message(c).rfind("seed", 0) == 0);
  c = config_for("table");
  c.functions = {4};
  CHECK(message(c).rfind("functions", 0) == 0);
  c = config_for("table");
  c.d2_b = -1.5;
  CHECK(message(c).rfind("d2_B", 0) == 0);
  CHECK(message(config_for("plot")).rfind("subcommand", 0) == 0);
  CHECK(message(config_for("verify")).empty());
}

TEST_CASE("grid points include both ends") {
  const auto p = GridSpec{0.0, 1.0, 11}.points();
  REQUIRE(p.size() == 11);
  CHECK(p.front() == 0.0);
  CHECK(p.back() == 1.0);
  CHECK(std::abs(p[3] - 0.3) < 1e-15);
}

TEST_CASE("sweep-c reproduces the engine outputs bit for bit") {
  RunConfig c = config_for("sweep-c");
  c.validate();
  const auto records = sweep_c(c);
  CHECK(records.size() == 11 * 2 * 4);
  for (const SweepRecord& r : records) {
    const ProbabilityTable expected = r.engine == "classical"
                                          ? two_cycle_probs_classical(r.function, r.x, r.x)
                                          : two_cycle_probs_exponential(r.function, r.x, r.x);
    CHECK(max_difference(r.table, expected) == 0.0);
  }
}

TEST_CASE("sweep-c CSV limits") {
  RunConfig c = config_for("sweep-c");
  c.validate();
  const auto table = rows(to_csv(sweep_c(c), c));
  const auto& h = table.front();
  CHECK(h.front() == "engine");
  const std::size_t kc = column(h, "c"), p00 = column(h, "p00"), p11 = column(h, "p11"),
                    p01 = column(h, "p01"), p10 = column(h, "p10");
  int seen = 0;
  for (std::size_t k = 1; k < table.size(); ++k) {
    const auto& r = table[k];
    REQUIRE(r.size() == h.size());
    if (r[2] != "constant" || r[kc] != "0") continue;
    ++seen;
    if (r[0] == "classical") {
      CHECK(r[p00] == "0.5");
      CHECK(r[p01] == "0.5");
      CHECK(r[p10] == "0.5");
      CHECK(r[p11] == "0.5");
    } else {
      CHECK(r[p00] == "0.75");
      CHECK(r[p01] == "0.25");
      CHECK(r[p10] == "0.25");
      CHECK(r[p11] == "0.75");
    }
  }
  CHECK(seen == 4);

  // c = 1: noiseless, conditioning on the wrong outcome is undefined.
  for (std::size_t k = 1; k < table.size(); ++k) {
    const auto& r = table[k];
    if (r[kc] != "1") continue;
    if (r[2] == "constant") {
      CHECK(r[p00] == "1");
      CHECK(r[p10] == kUndefinedToken);
    } else {
      CHECK(r[p11] == "1");
      CHECK(r[p00] == kUndefinedToken);
    }
  }
}

TEST_CASE("CSV values are numbers in [0, 1] or the sentinel") {
  for (const char* sub : {"sweep-c", "nv-sweep", "table"}) {
    RunConfig c = config_for(sub);
    if (std::string(sub) == "nv-sweep") {
      c.grid = {0.0, 40.0, 81};
      c.engines = {"classical-from-bath", "quantum-from-bath", "exponential-from-bath"};
    }
    if (std::string(sub) == "table") {
      c.c_a = 0.3;
      c.c_b = 0.9;
      c.d2_a = -0.2;
      c.d2_b = 0.5;
    }
    c.validate();
    const auto records = std::string(sub) == "sweep-c"    ? sweep_c(c)
                         : std::string(sub) == "nv-sweep" ? nv_sweep(c)
                                                          : table_point(c);
    const auto table = rows(to_csv(records, c));
    const auto& h = table.front();
    const std::size_t first = column(h, "p0");
    for (std::size_t k = 1; k < table.size(); ++k) {
      REQUIRE(table[k].size() == h.size());
      for (std::size_t j = first; j < h.size(); ++j) {
        const std::string& v = table[k][j];
        if (v == kUndefinedToken) continue;
        const double x = std::stod(v);
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
      }
    }
  }
}

TEST_CASE("nv-sweep rows") {
  RunConfig c = config_for("nv-sweep");
  c.grid = {0.0, 10.0, 6};
  c.validate();
  CHECK(c.engines == std::vector<std::string>{"classical-from-bath", "quantum-from-bath"});
  const auto records = nv_sweep(c);
  CHECK(records.size() == 6 * 2 * 4);
  const auto table = rows(to_csv(records, c));
  const auto& h = table.front();
  const std::size_t t = column(h, "t_us"), ca = column(h, "cA_re"), cabs = column(h, "cA_abs");
  const std::size_t d2 = column(h, "d2B_re");
  for (std::size_t k = 1; k < table.size(); ++k) {
    if (table[k][t] != "0") continue;
    CHECK(table[k][ca] == "1");
    CHECK(table[k][cabs] == "1");
    CHECK(table[k][d2] == "1");
  }
  for (const SweepRecord& r : records) {
    REQUIRE(r.factors);
    const double cr = std::clamp(r.factors->a.c.real(), -1.0, 1.0);
    const double cb = std::clamp(r.factors->b.c.real(), -1.0, 1.0);
    const ProbabilityTable expected =
        r.engine == "classical-from-bath"
            ? two_cycle_probs_classical(r.function, cr, cb)
            : two_cycle_probs_quantum(r.function, cr, cb, std::clamp(r.factors->a.d2(), -1.0, 1.0),
                                      std::clamp(r.factors->b.d2(), -1.0, 1.0));
    CHECK(max_difference(r.table, expected) == 0.0);
  }
}

TEST_CASE("nv-sweep reports data errors") {
  RunConfig c = config_for("nv-sweep");
  c.bath_a = "/nonexistent/bath.csv";
  c.validate();
  CHECK_THROWS_AS(nv_sweep(c), ParseError);
}

TEST_CASE("output is deterministic, including sampled counts") {
  RunConfig c = config_for("nv-sweep");
  c.grid = {0.0, 20.0, 21};
  c.shots = 1000;
  c.seed = 99;
  c.validate();
  const std::string a = to_csv(nv_sweep(c), c);
  const std::string b = to_csv(nv_sweep(c), c);
  CHECK(a == b);
  const auto table = rows(a);
  const auto& h = table.front();
  const std::size_t n00 = column(h, "N00");
  for (std::size_t k = 1; k < table.size(); ++k) {
    std::uint64_t sum = 0;
    for (std::size_t j = n00; j < n00 + 4; ++j) sum += std::stoull(table[k][j]);
    CHECK(sum == 1000);
  }
  c.seed = 100;
  CHECK(to_csv(nv_sweep(c), c) != a);
}

TEST_CASE("table subcommand") {
  RunConfig c = config_for("table");
  c.c_a = 0.0;
  c.d2_a = 0.0;
  c.functions = {0};
  c.validate();
  const auto records = table_point(c);
  REQUIRE(records.size() == 3);
  CHECK(records[1].engine == "quantum");
  CHECK((*records[1].table.p_cond[0])[0] == 0.75);
  CHECK((*records[0].table.p_cond[0])[0] == 0.5);
}

TEST_CASE("format_value keeps 15 significant digits") {
  CHECK(format_value(0.5) == "0.5");
  CHECK(format_value(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_value(0.0) == "0");
}

TEST_CASE("table rejects factor combinations no environment can produce") {
  RunConfig c = config_for("table");
  c.c_a = -0.9;
  c.d2_a = 0.0;
  c.functions = {0};
  c.validate();
  try {
    table_point(c);
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).rfind("c_A", 0) == 0);
  }
}
