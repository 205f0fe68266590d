#include "report.hpp"

#include "spinorlz/constants.hpp"
#include "spinorlz/crossing_models.hpp"
#include "spinorlz/field_mapping.hpp"
#include "spinorlz/interferometer.hpp"
#include "spinorlz/majorana.hpp"
#include "spinorlz/spinor_gp.hpp"
#include "spinorlz/tdse_oracle.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

namespace spinorlz::cli {

namespace {

std::string short_number(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

ReportLine relative(std::string name, double computed, double expected, double rel)
{
  const bool pass = std::abs(computed - expected) <= rel * std::abs(expected);
  return {std::move(name), computed, expected,
          "rel " + short_number(rel * 100) + "%", pass};
}

ReportLine absolute(std::string name, double computed, double expected, double tol)
{
  const bool pass = std::abs(computed - expected) <= tol;
  return {std::move(name), computed, expected, "abs " + short_number(tol), pass};
}

ReportLine below(std::string name, double computed, double bound)
{
  return {std::move(name), computed, bound, "< bound", computed < bound};
}

} // namespace

std::vector<ReportLine> reproduction_report(const std::string& species_dir)
{
  std::vector<ReportLine> lines;

  // Reference lab setup: 60 mG coupling, 300 mG bias, 5e4 G/s ramp.
  const MappedParams m = map_fields({0.060, 0.300, 5e4, 0.5});
  lines.push_back(absolute("field mapping: mu", m.mu, 5.0, 1e-12));
  lines.push_back(relative("field mapping: eps*mu", m.eps_mu, 10.0, 0.05));
  lines.push_back(relative("field mapping: eps", m.epsilon, 2.0, 0.05));
  lines.push_back(relative("field mapping: t_c [s]", m.t_c, 24e-6, 0.01));
  lines.push_back(relative("field mapping: t_z [s]", m.t_z, 2e-6, 0.15));
  lines.push_back(relative("field mapping: R", m.r, 0.78, 0.01));
  const IcaValidation ica = validate_ica(m, 5.0);
  lines.push_back({"field mapping: t_c/t_z above ICA margin", ica.ratio, 5.0, ">= margin", ica.ok});

  const SpeciesParams rb = std::filesystem::exists(species_dir + "/rb87.cfg")
                             ? load_species(species_dir + "/rb87.cfg")
                             : rubidium87();
  const double gamma = spin_mixing_rate_bound(rb);
  lines.push_back({"Rb87 spin-mixing rate bound gamma [1/s]", gamma, 90.0, "in [80, 100]",
                   gamma >= 80.0 && gamma <= 100.0});
  lines.push_back(below("Rb87 population change bound gamma*100us", gamma * 100e-6, 0.01));

  lines.push_back(absolute("LZ phase at Lambda=0", lz_phase(0.0), constants::pi / 4, 1e-12));
  lines.push_back(below("LZ phase at Lambda=20", lz_phase(20.0), 0.01));

  // 3-level LZ propagator top-left entry (1 - R^2) e^{-2 i phi}
  {
    const double lambda = m.lambda;
    const double r = lz_amplitude(lambda);
    const double phi = lz_phase(lambda);
    const Matrix u = lift(lz_propagator(lambda), 3);
    const Complex expected = std::polar(1.0 - r * r, -2.0 * phi);
    lines.push_back(absolute("3-level LZ propagator entry (1,1) deviation",
                             std::abs(u(0, 0) - expected), 0.0, 1e-12));
  }

  {
    const double sigma = dynamical_phase_sigma({1.0, 20.0});
    const double asymptote = 8.0 * std::pow(20.0, 1.5) / 3.0;
    lines.push_back(relative("sigma(eps=1, mu=20) vs large-mu asymptote", sigma, asymptote, 0.02));
  }

  {
    const auto spec = HamiltonianSpec::parabolic_model({2.0, 5.0}, 2);
    const IcaComparison cmp =
      compare_with_ica(spec, IntegrationWindow::around_crossings(spec.parabolic, 8.0));
    lines.push_back(absolute("two-level P(1->2): TDSE oracle vs ICA (eps=2, mu=5)", cmp.p_oracle,
                             cmp.p_ica, 0.02));
  }

  {
    // maximum of 16 R^4 (1-R^2)^2: golden section on (0, 1)
    double a = 0.0;
    double b = 1.0;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    while (b - a > 1e-12)
    {
      const double c = b - g * (b - a);
      const double d = a + g * (b - a);
      if (fringe_prefactor(c) > fringe_prefactor(d))
        b = d;
      else
        a = c;
    }
    lines.push_back(absolute("R maximizing the fringe amplitude", 0.5 * (a + b),
                             1.0 / std::sqrt(2.0), 1e-6));
  }

  return lines;
}

} // namespace spinorlz::cli
