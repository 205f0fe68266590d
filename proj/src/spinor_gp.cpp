#include "spinorlz/spinor_gp.hpp"

#include "spinorlz/constants.hpp"
#include "spinorlz/errors.hpp"
#include "spinorlz/keyvalue.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>

namespace spinorlz {

namespace odeint = boost::numeric::odeint;
using namespace std::complex_literals;

namespace {

constexpr double kNormTol = 1e-9;

double density_si(double density_cm3) { return density_cm3 / constants::m3_per_cm3; }

} // namespace

void SpeciesParams::validate() const
{
  if (!(mass_kg > 0) || !std::isfinite(mass_kg))
    throw InvalidArgument("SpeciesParams: mass must be positive");
  if (!(n_max_cm3 > 0) || !std::isfinite(n_max_cm3))
    throw InvalidArgument("SpeciesParams: n_max must be positive");
  if (!std::isfinite(a0_bohr) || !std::isfinite(a2_bohr) || !std::isfinite(g_f))
    throw InvalidArgument("SpeciesParams: non-finite scattering length or g-factor");
}

SpeciesParams rubidium87()
{
  return {"Rb87", 101.8, 100.4, 1.4431609e-25, 0.5, 1e14,
          "E. G. M. van Kempen et al., Phys. Rev. Lett. 88, 093201 (2002)"};
}

SpeciesParams sodium23()
{
  return {"Na23", 47.36, 52.98, 3.8175410e-26, 0.5, 1e14,
          "S. Knoop et al., Phys. Rev. A 83, 042704 (2011)"};
}

namespace {

SpeciesParams species_from(const KeyValueFile& file)
{
  SpeciesParams s;
  s.name = file.text("name");
  s.a0_bohr = file.number("a0_bohr");
  s.a2_bohr = file.number("a2_bohr");
  s.mass_kg = file.number("mass_kg");
  s.g_f = file.number("g_F");
  s.citation = file.text("citation");
  if (auto n = file.maybe_number("n_max_cm3"))
    s.n_max_cm3 = *n;
  s.validate();
  return s;
}

} // namespace

SpeciesParams parse_species(std::string_view text, std::string source)
{
  return species_from(KeyValueFile::parse(text, std::move(source)));
}

SpeciesParams load_species(const std::filesystem::path& path)
{
  return species_from(KeyValueFile::load(path));
}

CouplingConstants coupling_constants(const SpeciesParams& species)
{
  species.validate();
  const double prefactor =
    4.0 * constants::pi * constants::hbar * constants::hbar / (3.0 * species.mass_kg);
  const double a0 = species.a0_bohr * constants::bohr_radius;
  const double a2 = species.a2_bohr * constants::bohr_radius;
  return {prefactor * (a0 + 2.0 * a2), prefactor * (a2 - a0)};
}

double spin_mixing_rate_bound(const SpeciesParams& species)
{
  const CouplingConstants c = coupling_constants(species);
  return 4.0 * std::abs(c.lambda_a) * density_si(species.n_max_cm3) / constants::hbar;
}

double SMAState::norm() const
{
  return std::norm(zeta[0]) + std::norm(zeta[1]) + std::norm(zeta[2]);
}

double SMAState::magnetization() const
{
  return std::norm(zeta[0]) - std::norm(zeta[2]);
}

std::array<double, 3> SMAState::populations() const
{
  return {std::norm(zeta[0]), std::norm(zeta[1]), std::norm(zeta[2])};
}

Spinor sma_rhs(const SMAState& state, const CouplingConstants& couplings)
{
  const double n = density_si(state.density_cm3);
  const double ls = couplings.lambda_s * n / constants::hbar;
  const double la = couplings.lambda_a * n / constants::hbar;

  const Complex z1 = state.zeta[0];
  const Complex z0 = state.zeta[1];
  const Complex zm = state.zeta[2];
  const double n1 = std::norm(z1);
  const double n0 = std::norm(z0);
  const double nm = std::norm(zm);

  const Complex h1 = ls * z1 + la * (z0 * z0 * std::conj(zm) + (n1 + n0 - nm) * z1);
  const Complex h0 = ls * z0 + la * (2.0 * z1 * zm * std::conj(z0) + (nm + n1) * z0);
  const Complex hm = ls * zm + la * (z0 * z0 * std::conj(z1) + (nm + n0 - n1) * zm);
  return {-1i * h1, -1i * h0, -1i * hm};
}

Spinor sma_rhs(const SMAState& state, const SpeciesParams& species)
{
  return sma_rhs(state, coupling_constants(species));
}

std::array<double, 3> population_rates(const SMAState& state, const CouplingConstants& couplings)
{
  const Spinor d = sma_rhs(state, couplings);
  std::array<double, 3> rates{};
  for (std::size_t k = 0; k < 3; ++k)
    rates[k] = 2.0 * std::real(std::conj(state.zeta[k]) * d[k]);
  return rates;
}

SMATrajectory integrate_sma(const SMAState& initial, const SpeciesParams& species,
                            double duration_s, double rel_tol)
{
  species.validate();
  if (!(duration_s > 0) || !std::isfinite(duration_s))
    throw InvalidArgument("integrate_sma: duration must be positive");
  if (!(rel_tol > 0 && rel_tol < 1e-3))
    throw InvalidArgument("integrate_sma: rel_tol must lie in (0, 1e-3)");
  if (std::abs(initial.norm() - 1.0) > kNormTol)
    throw InvalidArgument("integrate_sma: initial spinor must be normalized");
  if (!(initial.density_cm3 > 0) || initial.density_cm3 > species.n_max_cm3)
    throw InvalidArgument("integrate_sma: density must lie in (0, n_max]");

  const CouplingConstants couplings = coupling_constants(species);
  const double density = initial.density_cm3;

  SMATrajectory traj;
  traj.gamma = spin_mixing_rate_bound(species);
  const double norm0 = initial.norm();
  const double mag0 = initial.magnetization();

  auto system = [&](const Spinor& zeta, Spinor& dzdt, double t) {
    dzdt = sma_rhs(SMAState{zeta, density, t}, couplings);
  };
  auto observer = [&](const Spinor& zeta, double t) {
    SMAState s{zeta, density, initial.time_s + t};
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(s.norm() - norm0));
    traj.max_magnetization_drift =
      std::max(traj.max_magnetization_drift, std::abs(s.magnetization() - mag0));
    const double n0 = std::norm(zeta[1]);
    if (n0 > 0 && traj.gamma > 0)
    {
      const double rate = std::abs(population_rates(s, couplings)[1]);
      traj.max_rate_bound_ratio = std::max(traj.max_rate_bound_ratio, rate / (traj.gamma * n0));
    }
    traj.states.push_back(s);
  };

  // Fastest intrinsic frequency sets the first trial step.
  const double rate_scale =
    (std::abs(couplings.lambda_s) + 4.0 * std::abs(couplings.lambda_a)) *
      density_si(density) / constants::hbar + 1.0 / duration_s;
  Spinor state = initial.zeta;
  auto stepper = odeint::make_controlled(rel_tol * 1e-2, rel_tol,
                                         odeint::runge_kutta_dopri5<Spinor>());
  traj.steps = odeint::integrate_adaptive(stepper, system, state, 0.0, duration_s,
                                          0.01 / rate_scale, observer);
  if (traj.states.empty() || !std::isfinite(traj.states.back().norm()))
    throw NumericalError("integrate_sma: integration failed");
  return traj;
}

Matrix GPPhases::propagator() const
{
  Matrix u = Matrix::Zero(3, 3);
  u(0, 0) = std::polar(1.0, theta1);
  u(1, 1) = 1.0;
  u(2, 2) = std::polar(1.0, -theta_m1);
  return u;
}

GPPhases extract_gp_propagator(const SMATrajectory& trajectory, double max_population_change)
{
  if (trajectory.states.size() < 2)
    throw InvalidArgument("extract_gp_propagator: trajectory has fewer than two states");
  const auto& first = trajectory.states.front();
  const auto pops0 = first.populations();
  for (std::size_t k = 0; k < 3; ++k)
    if (pops0[k] < 1e-12)
      throw InvalidArgument("extract_gp_propagator: component " + std::to_string(k) +
                            " is empty, its phase is undefined");

  // Unwrap the relative phases directly; the common lambda_s phase can turn
  // quickly, the differences cannot.
  double theta1 = 0.0;
  double theta_m1 = 0.0;
  for (std::size_t i = 0; i < trajectory.states.size(); ++i)
  {
    const auto& s = trajectory.states[i];
    const auto pops = s.populations();
    for (std::size_t k = 0; k < 3; ++k)
      if (std::abs(pops[k] - pops0[k]) >= max_population_change)
        throw InvalidArgument(
          "extract_gp_propagator: populations changed too much for a phase-only propagator");
    if (i == 0)
      continue;
    const auto& prev = trajectory.states[i - 1].zeta;
    const Complex rel1 = s.zeta[0] * std::conj(s.zeta[1]);
    const Complex relm = s.zeta[2] * std::conj(s.zeta[1]);
    theta1 += std::arg(rel1 * std::conj(prev[0] * std::conj(prev[1])));
    theta_m1 -= std::arg(relm * std::conj(prev[2] * std::conj(prev[1])));
  }
  return {theta1, theta_m1};
}

} // namespace spinorlz
