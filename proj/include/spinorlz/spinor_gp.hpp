#pragma once

#include "spinorlz/spin_algebra.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace spinorlz {

/// Collisional parameters of an F = 1 species.
struct SpeciesParams
{
  std::string name;
  double a0_bohr = 0.0; // total-spin-0 channel scattering length
  double a2_bohr = 0.0; // total-spin-2 channel
  double mass_kg = 0.0;
  double g_f = 0.5;
  double n_max_cm3 = 1e14;
  std::string citation;

  void validate() const;
};

SpeciesParams rubidium87();
SpeciesParams sodium23();

/// Reads name, a0_bohr, a2_bohr, mass_kg, g_F, citation (and optional
/// n_max_cm3) from a key-value file.
SpeciesParams load_species(const std::filesystem::path& path);
SpeciesParams parse_species(std::string_view text, std::string source = "<string>");

struct CouplingConstants
{
  double lambda_s = 0.0; // J m^3
  double lambda_a = 0.0; // J m^3
};

/// lambda_s = 4 pi hbar^2 (a0 + 2 a2) / 3m, lambda_a = 4 pi hbar^2 (a2 - a0) / 3m
CouplingConstants coupling_constants(const SpeciesParams& species);

/// gamma = 4 |lambda_a| n_max / hbar, in 1/s.
double spin_mixing_rate_bound(const SpeciesParams& species);

/// Spinor components in the order (m = +1, 0, -1).
using Spinor = std::array<Complex, 3>;

/// Uniform single-mode state psi_m = sqrt(n) zeta_m.
struct SMAState
{
  Spinor zeta{Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}};
  double density_cm3 = 1e14;
  double time_s = 0.0;

  double norm() const;
  double magnetization() const;
  std::array<double, 3> populations() const;
};

/// d zeta / dt from the spin-1 Gross-Pitaevskii equations with kinetic and
/// trap terms dropped.
Spinor sma_rhs(const SMAState& state, const CouplingConstants& couplings);
Spinor sma_rhs(const SMAState& state, const SpeciesParams& species);

/// d|zeta_m|^2/dt evaluated from the right-hand side, order (+1, 0, -1).
std::array<double, 3> population_rates(const SMAState& state, const CouplingConstants& couplings);

struct SMATrajectory
{
  std::vector<SMAState> states; // one per accepted step, first is the initial state
  double gamma = 0.0;           // spin_mixing_rate_bound of the species
  double max_norm_drift = 0.0;
  double max_magnetization_drift = 0.0;
  /// max over accepted steps of |dN0/dt| / (gamma N0); <= 1 when the bound holds
  double max_rate_bound_ratio = 0.0;
  std::size_t steps = 0;
};

/// Adaptive Dormand-Prince integration over `duration_s` seconds.
SMATrajectory integrate_sma(const SMAState& initial, const SpeciesParams& species,
                            double duration_s, double rel_tol = 1e-12);

/// Relative phases accumulated by the m = +-1 components against m = 0.
struct GPPhases
{
  double theta1 = 0.0;
  double theta_m1 = 0.0;

  /// diag(exp(i theta1), 1, exp(-i theta_m1))
  Matrix propagator() const;
};

/// Phases from an SMA trajectory, unwrapped step by step. Throws
/// InvalidArgument if any population moved by `max_population_change` or
/// more, or if a component is empty.
GPPhases extract_gp_propagator(const SMATrajectory& trajectory,
                               double max_population_change = 0.01);

} // namespace spinorlz
