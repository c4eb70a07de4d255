#pragma once

// Environment models that produce dephasing factors.
//
// The NV-center model: each qubit sees a bath of independent spin-1/2 nuclei
// (I = sigma/2). With the qubit in |0> a nucleus precesses under the Zeeman
// term zeeman * I_z; in |1> it additionally feels the hyperfine field
// A . I. Couplings are angular frequencies in rad/us, times in us.

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnoise/dephasing.hpp"
#include "dnoise/state.hpp"

namespace dnoise {

using Vec3 = std::array<double, 3>;

// Gyromagnetic ratios in MHz/T. The electron value is 28.08 GHz/T written in MHz/T.
inline constexpr double kGammaCarbon13 = 10.71;
inline constexpr double kGammaElectron = 28.08e3;

struct NuclearSpin {
  Vec3 coupling{};  // (A^zx, A^zy, A^zz), rad/us
  double polarization = 0.0;
  int label = 0;
};

struct SpinBathSpec {
  std::vector<NuclearSpin> spins;
  double zeeman = 0.0;                // gamma_n * B_z, rad/us
  std::vector<double> distances_nm;   // optional; empty or one per spin

  // Throws ValidationError on an empty bath, |p| > 1 or non-finite couplings.
  void validate() const;
};

// Exponential (memoryless) dephasing: c(t) = exp(-rate t), d^2 = c^2.
struct ExponentialModel {
  double rate = 0.0;  // 1/us

  DephasingFactors factors(double t) const;
};

// Zeeman frequency gamma_n * B_z in rad/us. With angular = true the cyclic
// MHz/T ratio is multiplied by 2 pi; otherwise it is used as-is.
double zeeman_frequency(double gamma_n_mhz_per_t, double field_t, bool angular = true);

ConditionalPropagators spin_conditional_propagators(const NuclearSpin& spin, double zeeman,
                                                    double t);

// 1/2 (I + p I_z) = diag(1/2 + p/4, 1/2 - p/4).
DensityMatrix spin_initial_state(const NuclearSpin& spin);

// Product over spins of the per-spin factors; cost linear in bath size.
DephasingFactors bath_factors(const SpinBathSpec& bath, double t);

// Time-grid evaluation, one OpenMP task per time point, results in grid order.
std::vector<DephasingFactors> bath_factors(const SpinBathSpec& bath,
                                           std::span<const double> times);

// The whole bath as one 2^n-level environment: Hamiltonians built on the full
// tensor space and exponentiated numerically, initial state the product of
// the per-spin states. Used as brute-force reference and by the joint engine.
QubitEnvironment joint_environment(const SpinBathSpec& bath, double t,
                                   std::size_t cap = kDefaultDimensionCap);

// Point-dipole hyperfine couplings for a nucleus at `position_nm` relative to
// the qubit:
//   A^{z,i} = (mu0/4pi) hbar gamma_e gamma_n / r^3 * (1 - 3 (r.i)(r.z) / r^2)
// with both gyromagnetic ratios given in MHz/T (converted to rad/(s T)) and
// the result in rad/us.
Vec3 dipolar_coupling(const Vec3& position_nm, double gamma_e_mhz_per_t = kGammaElectron,
                      double gamma_n_mhz_per_t = kGammaCarbon13);

// Prefactor (mu0/4pi) hbar (2 pi 1e6)^2 / (1 nm)^3 in rad/us per (MHz/T)^2,
// with mu0/4pi = 1e-7 T m/A; multiply by gamma_e gamma_n / r_nm^3.
inline constexpr double kDipolarPrefactor = 4.1632826585312007e-7;

// Bath table: header row, then columns k, r_nm, Ax, Ay, Az separated by commas,
// tabs or spaces. Lines starting with '#' and blank lines are skipped. The
// given polarization is applied to every spin.
SpinBathSpec load_bath_table(std::string_view text, double polarization, double zeeman);
SpinBathSpec load_bath_file(const std::filesystem::path& path, double polarization,
                            double zeeman);
std::string format_bath_table(const SpinBathSpec& bath);

namespace serial {

std::vector<DephasingFactors> bath_factors(const SpinBathSpec& bath,
                                           std::span<const double> times);

}  // namespace serial

}  // namespace dnoise
