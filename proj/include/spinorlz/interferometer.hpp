#pragma once

#include "spinorlz/crossing_models.hpp"
#include "spinorlz/spin_algebra.hpp"
#include "spinorlz/spinor_gp.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace spinorlz {

/// Spin-1 interferometer: LZ splitter, free phase sigma plus GP phases,
/// transposed LZ recombiner. R and sigma are independent knobs here.
struct InterferometerConfig
{
  double r = 1.0 / 1.4142135623730951;
  double phi = 0.0;
  double sigma = 0.0;
  double theta1 = 0.0;
  double theta_m1 = 0.0;

  /// R, phi and sigma of the parabolic model, with the given GP phases.
  static InterferometerConfig from_parabolic(const ParabolicParams& params,
                                             const GPPhases& phases = {});

  void validate() const;
};

struct ChiPsi
{
  double chi = 0.0; // sigma/2 + phi - (theta1 + theta_m1)/4
  double psi = 0.0; // (theta1 - theta_m1)/4
};

ChiPsi chi_psi(const InterferometerConfig& config);

/// U_LZ^T(3) U_ph(3) U_GP(3) U_LZ(3), basis (m = +1, 0, -1).
Matrix total_propagator(const InterferometerConfig& config);

/// 16 R^4 (1 - R^2)^2 (sin^4 chi + cos 2chi sin^2 Psi), the m=+1 -> m=-1
/// output population.
double population_1_to_m1(const InterferometerConfig& config);

/// 16 R^4 (1 - R^2)^2
double fringe_prefactor(double r);

enum class SweepParameter
{
  sigma,
  chi,
};

const char* to_string(SweepParameter sweep);

struct FringeScan
{
  SweepParameter swept = SweepParameter::sigma;
  std::vector<double> grid;
  std::vector<double> chi;
  std::vector<double> psi;
  std::vector<double> populations;
  double visibility = 0.0; // (max - min) / (max + min)
  std::vector<std::size_t> minima;
  std::vector<std::size_t> maxima;
};

/// Evaluates population_1_to_m1 with sigma (or chi, by adjusting sigma) set
/// to each grid value; other config fields are held fixed.
FringeScan fringe_scan(const InterferometerConfig& config, SweepParameter sweep,
                       std::span<const double> grid);

std::vector<double> linspace(double first, double last, std::size_t points);

/// Full width at half maximum of the peak containing the global maximum,
/// half level taken between the sample min and max, linear interpolation.
double fwhm(std::span<const double> x, std::span<const double> y);

struct SharpnessComparison
{
  double fwhm_interferometer = 0.0; // sin^4 chi fringe
  double fwhm_two_arm = 0.0;        // sin^2 chi fringe
  double ratio = 0.0;
  bool sharper = false;
};

/// Compares the spin-1 fringe with a two-arm sin^2 fringe over one period in
/// chi. Requires Psi = 0.
SharpnessComparison sharper_fringes_check(const InterferometerConfig& config,
                                          std::size_t points = 20001);

} // namespace spinorlz
