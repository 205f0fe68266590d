#pragma once

#include "spinorlz/majorana.hpp"

#include <string>
#include <vector>

namespace spinorlz {

enum class Regime
{
  adiabatic,
  sudden,
};

const char* to_string(Regime regime);

/// Linear crossing H = [[slope t, coupling], [coupling, -slope t]].
struct LZParams
{
  double slope = 1.0;    // lambda, energy / time
  double coupling = 1.0; // V0, energy
  double hbar = 1.0;

  /// Lambda = V0^2 / (hbar lambda)
  double landau_zener_parameter() const;

  /// Scaled units V0 = hbar = 1, so slope = 1/Lambda. Requires Lambda > 0.
  static LZParams from_lambda(double lambda);

  void validate() const;
};

/// Scaled parabolic model [[eps tau^2 - mu, 1], [1, -eps tau^2 + mu]].
struct ParabolicParams
{
  double epsilon = 1.0;
  double mu = 1.0;

  /// eps = hbar^2 a / v^3, mu = b / v
  static ParabolicParams from_raw(double a, double b, double v, double hbar = 1.0);

  /// Throws unless eps > 0 and mu > 0 (double crossing).
  void validate() const;

  double lambda_eff() const;
  double tau_c() const;
};

struct ZenerTime
{
  double time = 0.0;
  Regime regime = Regime::sudden;
};

struct CrossingDiagnostics
{
  double tau_c = 0.0;
  double tau_z = 0.0;
  double lambda_eff = 0.0;
  double ica_margin = 0.0;
  Regime regime = Regime::sudden;

  bool ica_satisfied(double margin = 5.0) const { return ica_margin >= margin; }
};

/// R = exp(-pi Lambda / 2)
double lz_amplitude(double lambda);

/// phi = pi/4 + (Lambda/2) ln(Lambda / 2e) + arg Gamma(1 - i Lambda/2)
double lz_phase(double lambda);

/// Interaction-picture adiabatic-basis propagator
/// [[sqrt(1-R^2) e^{-i phi}, -R], [R, sqrt(1-R^2) e^{i phi}]].
TwoLevelPropagator lz_propagator(double lambda);

/// Same matrix from an explicit (R, phi) pair.
TwoLevelPropagator lz_propagator(double r, double phi);

/// Adiabatic branch V0/lambda when Lambda >= 1, sudden branch sqrt(hbar/lambda)
/// otherwise.
ZenerTime zener_time_lz(const LZParams& params);

CrossingDiagnostics crossing_diagnostics(const ParabolicParams& params);

/// sigma = 4 int_0^sqrt(mu/eps) sqrt((eps tau^2 - mu)^2 + 1) dtau, adaptive
/// Gauss-Kronrod to relative accuracy 1e-10.
double dynamical_phase_sigma(const ParabolicParams& params);

/// U_LZ^T U_ph U_LZ in closed form for given (R, phi, sigma).
TwoLevelPropagator composite_alpha_beta(double r, double phi, double sigma);

/// Closed form with R, phi from Lambda = 1/(2 sqrt(eps mu)) and sigma from
/// quadrature. Appends a message to `warnings` when the ICA margin is below 5.
TwoLevelPropagator composite_alpha_beta(const ParabolicParams& params,
                                        std::vector<std::string>* warnings = nullptr);

/// 4 R^2 (1 - R^2) sin^2(sigma/2 + phi)
double transition_prob_2level(double r, double phi, double sigma);
double transition_prob_2level(const ParabolicParams& params);

/// 16 R^4 (1 - R^2)^2 sin^4(sigma/2 + phi)
double transition_prob_1_to_3(double r, double phi, double sigma);
double transition_prob_1_to_3(const ParabolicParams& params);

/// Top-to-bottom transition of the lifted composite, |beta|^{2(n-1)}.
double transition_prob_1_to_n(const ParabolicParams& params, int levels);

} // namespace spinorlz
