#include "spinorlz/field_mapping.hpp"

#include "spinorlz/constants.hpp"
#include "spinorlz/errors.hpp"
#include "spinorlz/keyvalue.hpp"

#include <cmath>
#include <string>

namespace spinorlz {

void LabFields::validate() const
{
  auto positive = [](double x) { return std::isfinite(x) && x > 0; };
  if (!positive(bx_gauss) || !positive(bz0_gauss) || !positive(bdot_gauss_per_s))
    throw InvalidArgument("LabFields: B_x, B_z0 and dB_z/dt must be positive");
  if (!std::isfinite(g_f) || g_f == 0.0)
    throw InvalidArgument("LabFields: g_F must be finite and nonzero");
}

namespace {

LabFields fields_from(const KeyValueFile& file)
{
  LabFields f{file.number("B_x_gauss"), file.number("B_z0_gauss"),
              file.number("Bdot_gauss_per_s"), file.number("g_F")};
  f.validate();
  return f;
}

} // namespace

LabFields parse_lab_fields(std::string_view text, std::string source)
{
  return fields_from(KeyValueFile::parse(text, std::move(source)));
}

LabFields load_lab_fields(const std::filesystem::path& path)
{
  return fields_from(KeyValueFile::load(path));
}

MappedParams map_fields(const LabFields& fields)
{
  fields.validate();
  const double g = std::abs(fields.g_f);
  const double bx = fields.bx_gauss * constants::tesla_per_gauss;
  const double bdot = fields.bdot_gauss_per_s * constants::tesla_per_gauss;
  const double muB = constants::bohr_magneton;
  const double hbar = constants::hbar;

  MappedParams m;
  m.mu = fields.bz0_gauss / fields.bx_gauss;
  const double root = hbar * bdot / (g * muB * bx * bx); // sqrt(eps mu)
  m.eps_mu = root * root;
  m.epsilon = m.eps_mu / m.mu;
  m.lambda = 1.0 / (2.0 * root);
  m.r = lz_amplitude(m.lambda);
  m.phi = lz_phase(m.lambda);
  m.t_c = 4.0 * fields.bz0_gauss / fields.bdot_gauss_per_s;

  m.coupling_energy = 0.5 * g * muB * bx;
  m.time_unit = hbar / m.coupling_energy;

  const CrossingDiagnostics diag = crossing_diagnostics(m.parabolic());
  m.regime = diag.regime;
  m.t_z_two_level = diag.tau_z * m.time_unit;
  if (m.regime == Regime::adiabatic)
    m.t_z = 0.5 * fields.bx_gauss / fields.bdot_gauss_per_s;
  else
    m.t_z = std::sqrt(hbar / (g * muB * bdot));
  return m;
}

IcaValidation validate_ica(const MappedParams& mapped, double margin)
{
  if (!(margin > 1) || !std::isfinite(margin))
    throw InvalidArgument("validate_ica: margin must exceed 1");
  if (!(mapped.t_z > 0))
    throw InvalidArgument("validate_ica: Zener time must be positive");
  IcaValidation v;
  v.margin = margin;
  v.ratio = mapped.t_c / mapped.t_z;
  v.ok = v.ratio >= margin;
  return v;
}

} // namespace spinorlz
