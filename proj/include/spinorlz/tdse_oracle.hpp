#pragma once

#include "spinorlz/crossing_models.hpp"
#include "spinorlz/spin_algebra.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace spinorlz {

enum class ModelKind
{
  landau_zener,
  parabolic,
};

/// Time-dependent Hamiltonian of linear-Zeeman form
/// H(tau) = 2 c S_x + 2 d(tau) S_z in scaled units (coupling c = 1 by default):
///   landau_zener: d = tau / Lambda
///   parabolic:    d = eps tau^2 - mu
struct HamiltonianSpec
{
  ModelKind kind = ModelKind::parabolic;
  int levels = 2;
  double lz_lambda = 1.0;
  ParabolicParams parabolic{};
  double coupling = 1.0;

  static HamiltonianSpec landau_zener(double lambda, int levels = 2);
  static HamiltonianSpec parabolic_model(const ParabolicParams& params, int levels = 2);

  void validate() const;
  double detuning(double tau) const;
};

struct IntegrationWindow
{
  double tau_start = -1.0;
  double tau_end = 1.0;

  static IntegrationWindow symmetric(double half_width);
  /// +-multiples * tau_c around the midpoint of the two crossings.
  static IntegrationWindow around_crossings(const ParabolicParams& params, double multiples = 8.0);

  void validate() const;
};

/// How the initial vector's components are read: as diabatic amplitudes, or
/// as amplitudes on the instantaneous eigenstates that asymptotically carry
/// the same diabatic label.
enum class InitialFrame
{
  adiabatic,
  diabatic,
};

struct OracleOptions
{
  double rel_tol = 1e-10;
  InitialFrame frame = InitialFrame::adiabatic;
  bool allow_superposition = false;
  std::size_t max_steps = 20'000'000;
};

struct OracleResult
{
  StateVector final_state;
  std::vector<double> populations;           // diabatic basis at tau_end
  std::vector<double> adiabatic_populations; // by asymptotic diabatic label at tau_end
  double norm_drift = 0.0;
  std::size_t step_count = 0;
  std::size_t rejected_steps = 0;
  std::vector<std::string> warnings;
};

Matrix build_hamiltonian(const HamiltonianSpec& spec, double tau);

/// Instantaneous eigenvector that, for |tau| large, coincides with diabatic
/// state `label`. Phase fixed so that its largest component is real positive.
StateVector adiabatic_state(const HamiltonianSpec& spec, double tau, int label);

/// Instantaneous eigenvectors ordered by descending energy (column k is the
/// k-th highest level).
Matrix energy_ordered_eigenvectors(const HamiltonianSpec& spec, double tau);

/// Populations of `psi` on adiabatic_state(spec, tau, k), k = 0..n-1.
std::vector<double> adiabatic_populations(const HamiltonianSpec& spec, double tau,
                                          const StateVector& psi);

/// Adaptive fourth-order commutator-free Magnus integration of
/// i d psi/d tau = H(tau) psi with step-doubling error control.
OracleResult integrate(const HamiltonianSpec& spec, const IntegrationWindow& window,
                       const StateVector& initial, const OracleOptions& options = {});

/// Full finite-window propagator in the diabatic frame; column k is the
/// evolved basis vector k.
Matrix oracle_propagator(const HamiltonianSpec& spec, const IntegrationWindow& window,
                         double rel_tol = 1e-10);

struct IcaComparison
{
  int levels = 2;
  double p_oracle = 0.0;
  double p_ica = 0.0;
  double abs_error = 0.0;
  double sigma = 0.0;
  CrossingDiagnostics diagnostics;
  bool ica_flagged = false; // ica_margin < 5
  OracleResult run;
};

/// Top-to-bottom transition probability from the oracle (adiabatic start,
/// adiabatic readout) against |beta|^{2(n-1)} of the ICA composite.
IcaComparison compare_with_ica(const HamiltonianSpec& spec, const IntegrationWindow& window,
                               const OracleOptions& options = {});

struct FringePoint
{
  double mu = 0.0;
  double epsilon = 0.0;
  double sigma = 0.0;
  double p_oracle = 0.0;
  double p_ica = 0.0;
};

struct FringeComparison
{
  double eps_mu = 0.0;
  int levels = 2;
  std::vector<FringePoint> points;
  std::vector<double> oracle_minima_sigma;
  std::vector<double> ica_minima_sigma;
  /// max over oracle minima of |shift to nearest ICA minimum| / (2 pi)
  double max_shift_fraction = 0.0;
};

/// Sweeps mu at fixed eps*mu (fixed R and phi), so the top-to-bottom
/// probability traces fringes in sigma. Oracle minima are refined by golden
/// section search in mu; ICA minima sit at sigma = 2(k pi - phi).
FringeComparison compare_fringe_minima(double eps_mu, double mu_lo, double mu_hi, int points,
                                       int levels = 2, double window_multiples = 8.0,
                                       const OracleOptions& options = {});

} // namespace spinorlz
