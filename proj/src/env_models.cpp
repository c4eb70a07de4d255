#include "dnoise/env_models.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "dnoise/errors.hpp"

namespace dnoise {

namespace {

// Fixed-size 2x2 arithmetic for the per-spin hot path.
struct Mat2 {
  Complex a, b, c, d;  // [[a, b], [c, d]]

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }

  ComplexMatrix to_matrix() const { return ComplexMatrix{{a, b}, {c, d}}; }
};

// exp(-i t (field . sigma) / 2).
Mat2 pauli_rotation(const Vec3& field, double t) {
  const double norm = std::hypot(field[0], field[1], field[2]);
  if (norm == 0.0) return {1.0, 0.0, 0.0, 1.0};
  const double half = 0.5 * norm * t;
  const double cs = std::cos(half);
  const double sn = std::sin(half) / norm;
  const Complex i{0.0, 1.0};
  return {cs - i * sn * field[2], -i * sn * Complex{field[0], -field[1]},
          -i * sn * Complex{field[0], field[1]}, cs + i * sn * field[2]};
}

Vec3 free_field(double zeeman) { return {0.0, 0.0, zeeman}; }

Vec3 coupled_field(const NuclearSpin& spin, double zeeman) {
  return {spin.coupling[0], spin.coupling[1], spin.coupling[2] + zeeman};
}

// Tr[rho w1^dagger w0] with rho = diag(r0, r1).
Complex diagonal_overlap(double r0, double r1, const Mat2& w0, const Mat2& w1) {
  const Mat2 m = w1.adjoint() * w0;
  return r0 * m.a + r1 * m.d;
}

void validate_spin(const NuclearSpin& spin) {
  if (!(std::abs(spin.polarization) <= 1.0)) {
    throw ValidationError("nuclear spin " + std::to_string(spin.label) +
                          ": polarization must lie in [-1, 1]");
  }
  for (double a : spin.coupling) {
    if (!std::isfinite(a)) {
      throw ValidationError("nuclear spin " + std::to_string(spin.label) +
                            ": non-finite coupling");
    }
  }
}

DephasingFactors spin_product(const SpinBathSpec& bath, double t) {
  Complex c{1.0, 0.0};
  Complex d2{1.0, 0.0};
  for (const NuclearSpin& spin : bath.spins) {
    const double r0 = 0.5 + 0.25 * spin.polarization;
    const double r1 = 0.5 - 0.25 * spin.polarization;
    const Vec3 f0 = free_field(bath.zeeman);
    const Vec3 f1 = coupled_field(spin, bath.zeeman);
    c *= diagonal_overlap(r0, r1, pauli_rotation(f0, t), pauli_rotation(f1, t));
    d2 *= diagonal_overlap(r0, r1, pauli_rotation(f0, 2.0 * t), pauli_rotation(f1, 2.0 * t));
  }
  return {c, d2, t};
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("time must be finite and >= 0");
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  if (line.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return fields;
  }
  std::size_t pos = 0;
  while (pos < line.size()) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", pos);
    if (end == std::string_view::npos) end = line.size();
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

void append_number(std::string& out, double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

}  // namespace

void SpinBathSpec::validate() const {
  if (spins.empty()) throw ValidationError("spin bath has no spins");
  if (!distances_nm.empty() && distances_nm.size() != spins.size()) {
    throw ValidationError("spin bath: distance list does not match spin count");
  }
  if (!std::isfinite(zeeman)) throw ValidationError("spin bath: non-finite Zeeman frequency");
  for (const NuclearSpin& spin : spins) validate_spin(spin);
}

DephasingFactors ExponentialModel::factors(double t) const {
  if (!(rate >= 0.0)) throw ValidationError("exponential model: rate must be >= 0");
  require_time(t);
  const double c = std::exp(-rate * t);
  return {c, c * c, t};
}

double zeeman_frequency(double gamma_n_mhz_per_t, double field_t, bool angular) {
  const double cyclic = gamma_n_mhz_per_t * field_t;
  return angular ? 2.0 * std::numbers::pi * cyclic : cyclic;
}

ConditionalPropagators spin_conditional_propagators(const NuclearSpin& spin, double zeeman,
                                                    double t) {
  require_time(t);
  validate_spin(spin);
  return {pauli_rotation(free_field(zeeman), t).to_matrix(),
          pauli_rotation(coupled_field(spin, zeeman), t).to_matrix(), t};
}

DensityMatrix spin_initial_state(const NuclearSpin& spin) {
  validate_spin(spin);
  const double p = spin.polarization;
  return DensityMatrix(ComplexMatrix{{0.5 + 0.25 * p, 0.0}, {0.0, 0.5 - 0.25 * p}}, {2});
}

DephasingFactors bath_factors(const SpinBathSpec& bath, double t) {
  bath.validate();
  require_time(t);
  return spin_product(bath, t);
}

std::vector<DephasingFactors> bath_factors(const SpinBathSpec& bath,
                                           std::span<const double> times) {
  bath.validate();
  for (double t : times) require_time(t);
  std::vector<DephasingFactors> out(times.size());
  const auto n = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = spin_product(bath, times[k]);
  return out;
}

namespace serial {

std::vector<DephasingFactors> bath_factors(const SpinBathSpec& bath,
                                           std::span<const double> times) {
  std::vector<DephasingFactors> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(dnoise::bath_factors(bath, t));
  return out;
}

}  // namespace serial

QubitEnvironment joint_environment(const SpinBathSpec& bath, double t, std::size_t cap) {
  bath.validate();
  require_time(t);
  const std::size_t n = bath.spins.size();
  if (n >= 63 || (std::size_t{1} << n) > cap) {
    throw CapacityError("joint_environment: 2^" + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));
  }
  const std::vector<std::size_t> dims(n, 2);
  const std::size_t dim = std::size_t{1} << n;
  const Complex i{0.0, 1.0};
  const ComplexMatrix ix{{0.0, 0.5}, {0.5, 0.0}};
  const ComplexMatrix iy{{0.0, -0.5 * i}, {0.5 * i, 0.0}};
  const ComplexMatrix iz{{0.5, 0.0}, {0.0, -0.5}};

  ComplexMatrix h0(dim);
  ComplexMatrix h1(dim);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t target[] = {k};
    const NuclearSpin& spin = bath.spins[k];
    const ComplexMatrix zeeman_term = serial::embed_operator(iz, dims, target) * bath.zeeman;
    const ComplexMatrix hyperfine =
        serial::embed_operator(ix * spin.coupling[0] + iy * spin.coupling[1] +
                                   iz * spin.coupling[2],
                               dims, target);
    h0 += zeeman_term;
    h1 += zeeman_term + hyperfine;
  }

  ComplexMatrix rho = spin_initial_state(bath.spins[0]).matrix();
  for (std::size_t k = 1; k < n; ++k) rho = tensor(rho, spin_initial_state(bath.spins[k]).matrix(), cap);

  return {ConditionalPropagators::from_hamiltonians(h0, h1, t),
          DensityMatrix(std::move(rho), dims)};
}

Vec3 dipolar_coupling(const Vec3& position_nm, double gamma_e_mhz_per_t,
                      double gamma_n_mhz_per_t) {
  const double r = std::hypot(position_nm[0], position_nm[1], position_nm[2]);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw ValidationError("dipolar_coupling: position must be a finite nonzero vector");
  }
  const double strength = kDipolarPrefactor * gamma_e_mhz_per_t * gamma_n_mhz_per_t / (r * r * r);
  const double rz = position_nm[2];
  Vec3 out{};
  for (std::size_t k = 0; k < 3; ++k) {
    out[k] = strength * (1.0 - 3.0 * position_nm[k] * rz / (r * r));
  }
  return out;
}

SpinBathSpec load_bath_table(std::string_view text, double polarization, double zeeman) {
  SpinBathSpec bath;
  bath.zeeman = zeeman;
  bool seen_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (fields.size() != 5) {
      throw ParseError("expected 5 columns (k, r_nm, Ax, Ay, Az), found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    if (!seen_header) {
      double probe = 0.0;
      if (parse_number(fields[0], probe)) {
        throw ParseError("missing header row (k, r_nm, Ax, Ay, Az)", line_no);
      }
      seen_header = true;
      continue;
    }
    NuclearSpin spin;
    double r = 0.0;
    if (!parse_number(fields[0], spin.label)) {
      throw ParseError("non-integer spin index '" + std::string(fields[0]) + "'", line_no);
    }
    if (!parse_number(fields[1], r)) {
      throw ParseError("non-numeric distance '" + std::string(fields[1]) + "'", line_no);
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (!parse_number(fields[2 + k], spin.coupling[k])) {
        throw ParseError("non-numeric coupling '" + std::string(fields[2 + k]) + "'", line_no);
      }
    }
    spin.polarization = polarization;
    bath.spins.push_back(spin);
    bath.distances_nm.push_back(r);
  }
  if (bath.spins.empty()) throw ParseError("bath table has no data rows", 0);
  bath.validate();
  return bath;
}

SpinBathSpec load_bath_file(const std::filesystem::path& path, double polarization,
                            double zeeman) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open bath table " + path.string(), 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return load_bath_table(buffer.str(), polarization, zeeman);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

std::string format_bath_table(const SpinBathSpec& bath) {
  std::string out = "k,r_nm,Ax,Ay,Az\n";
  for (std::size_t n = 0; n < bath.spins.size(); ++n) {
    const NuclearSpin& spin = bath.spins[n];
    out += std::to_string(spin.label);
    out += ',';
    append_number(out, bath.distances_nm.empty() ? 0.0 : bath.distances_nm[n]);
    for (double a : spin.coupling) {
      out += ',';
      append_number(out, a);
    }
    out += '\n';
  }
  return out;
}

}  // namespace dnoise
