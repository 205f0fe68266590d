#include "spinorlz/interferometer.hpp"

#include "spinorlz/constants.hpp"
#include "spinorlz/errors.hpp"
#include "spinorlz/majorana.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace spinorlz {

using constants::pi;

InterferometerConfig InterferometerConfig::from_parabolic(const ParabolicParams& params,
                                                          const GPPhases& phases)
{
  const double lambda = params.lambda_eff();
  InterferometerConfig c{lz_amplitude(lambda), lz_phase(lambda), dynamical_phase_sigma(params),
                         phases.theta1, phases.theta_m1};
  c.validate();
  return c;
}

void InterferometerConfig::validate() const
{
  if (!(r > 0 && r < 1))
    throw InvalidArgument("InterferometerConfig: R must lie in (0, 1)");
  if (!std::isfinite(phi) || !std::isfinite(sigma) || !std::isfinite(theta1) ||
      !std::isfinite(theta_m1))
    throw InvalidArgument("InterferometerConfig: phases must be finite");
}

ChiPsi chi_psi(const InterferometerConfig& config)
{
  config.validate();
  return {0.5 * config.sigma + config.phi - 0.25 * (config.theta1 + config.theta_m1),
          0.25 * (config.theta1 - config.theta_m1)};
}

Matrix total_propagator(const InterferometerConfig& config)
{
  config.validate();
  const TwoLevelPropagator splitter = lz_propagator(config.r, config.phi);
  const std::array<Matrix, 4> factors = {
    lift(splitter.transpose(), 3),
    lift_diagonal_phase(config.sigma, 3),
    GPPhases{config.theta1, config.theta_m1}.propagator(),
    lift(splitter, 3),
  };
  return compose(factors);
}

double fringe_prefactor(double r)
{
  const double r2 = r * r;
  return 16.0 * r2 * r2 * (1.0 - r2) * (1.0 - r2);
}

double population_1_to_m1(const InterferometerConfig& config)
{
  const auto [chi, psi] = chi_psi(config);
  const double s = std::sin(chi);
  const double sp = std::sin(psi);
  return fringe_prefactor(config.r) * (s * s * s * s + std::cos(2.0 * chi) * sp * sp);
}

const char* to_string(SweepParameter sweep)
{
  return sweep == SweepParameter::sigma ? "sigma" : "chi";
}

FringeScan fringe_scan(const InterferometerConfig& config, SweepParameter sweep,
                       std::span<const double> grid)
{
  config.validate();
  if (grid.empty())
    throw InvalidArgument("fringe_scan: empty grid");
  if (grid.size() > 1)
  {
    const bool up = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (!std::isfinite(grid[i]) || (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])))
        throw InvalidArgument("fringe_scan: grid must be strictly monotone");
  }

  FringeScan scan;
  scan.swept = sweep;
  scan.grid.assign(grid.begin(), grid.end());
  const double common = 0.25 * (config.theta1 + config.theta_m1);
  for (double x : grid)
  {
    InterferometerConfig c = config;
    if (sweep == SweepParameter::sigma)
      c.sigma = x;
    else
      c.sigma = 2.0 * (x - c.phi + common);
    const ChiPsi cp = chi_psi(c);
    scan.chi.push_back(cp.chi);
    scan.psi.push_back(cp.psi);
    scan.populations.push_back(population_1_to_m1(c));
  }

  const auto [lo, hi] = std::minmax_element(scan.populations.begin(), scan.populations.end());
  scan.visibility = (*hi + *lo) > 0 ? (*hi - *lo) / (*hi + *lo) : 0.0;

  const auto& p = scan.populations;
  for (std::size_t i = 1; i + 1 < p.size(); ++i)
  {
    if (p[i] <= p[i - 1] && p[i] < p[i + 1])
      scan.minima.push_back(i);
    if (p[i] >= p[i - 1] && p[i] > p[i + 1])
      scan.maxima.push_back(i);
  }
  return scan;
}

std::vector<double> linspace(double first, double last, std::size_t points)
{
  if (points < 2)
    throw InvalidArgument("linspace: need at least two points");
  std::vector<double> x(points);
  for (std::size_t i = 0; i < points; ++i)
    x[i] = first + (last - first) * static_cast<double>(i) / static_cast<double>(points - 1);
  return x;
}

double fwhm(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size() || x.size() < 3)
    throw InvalidArgument("fwhm: need matching samples, at least three");
  const auto peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  const double top = y[peak];
  const double bottom = *std::min_element(y.begin(), y.end());
  const double half = bottom + 0.5 * (top - bottom);

  auto crossing = [&](std::size_t i, std::size_t j) {
    return x[i] + (half - y[i]) * (x[j] - x[i]) / (y[j] - y[i]);
  };

  std::size_t left = peak;
  while (left > 0 && y[left - 1] > half)
    --left;
  std::size_t right = peak;
  while (right + 1 < y.size() && y[right + 1] > half)
    ++right;
  if (left == 0 || right + 1 == y.size())
    throw NumericalError("fwhm: peak does not fall below half maximum inside the grid");
  return crossing(right, right + 1) - crossing(left - 1, left);
}

SharpnessComparison sharper_fringes_check(const InterferometerConfig& config, std::size_t points)
{
  const ChiPsi cp = chi_psi(config);
  if (std::abs(std::sin(cp.psi)) > 1e-12)
    throw InvalidArgument("sharper_fringes_check: requires Psi = 0");

  // One period of sin^2 chi, centred on its maximum at chi = pi/2.
  const std::vector<double> chi = linspace(0.0, pi, points);
  const FringeScan scan = fringe_scan(config, SweepParameter::chi, chi);
  std::vector<double> two_arm(points);
  const double r2 = config.r * config.r;
  for (std::size_t i = 0; i < points; ++i)
  {
    const double s = std::sin(chi[i]);
    two_arm[i] = 4.0 * r2 * (1.0 - r2) * s * s;
  }

  SharpnessComparison out;
  out.fwhm_interferometer = fwhm(chi, scan.populations);
  out.fwhm_two_arm = fwhm(chi, two_arm);
  out.ratio = out.fwhm_interferometer / out.fwhm_two_arm;
  out.sharper = out.fwhm_interferometer < out.fwhm_two_arm;
  return out;
}

} // namespace spinorlz
