#pragma once

#include "spinorlz/crossing_models.hpp"

#include <filesystem>
#include <string_view>

namespace spinorlz {

/// Field magnitudes in Gauss, ramp rate in Gauss/s.
struct LabFields
{
  double bx_gauss = 0.0;        // transverse coupling field
  double bz0_gauss = 0.0;       // |B_z(t=0)|, bias midway between the crossings
  double bdot_gauss_per_s = 0.0; // |dB_z/dt| at the crossings
  double g_f = 0.5;

  void validate() const;
};

/// Reads B_x_gauss, B_z0_gauss, Bdot_gauss_per_s, g_F.
LabFields load_lab_fields(const std::filesystem::path& path);
LabFields parse_lab_fields(std::string_view text, std::string source = "<string>");

struct MappedParams
{
  double epsilon = 0.0;
  double mu = 0.0;
  double eps_mu = 0.0;
  double lambda = 0.0;    // 1 / (2 sqrt(eps mu))
  double r = 0.0;
  double phi = 0.0;
  double t_c = 0.0;       // s
  double t_z = 0.0;       // s, spin-1 Hamiltonian linearized at a crossing
  double t_z_two_level = 0.0; // s, scaled tau_Z of the two-level model times hbar/v
  double coupling_energy = 0.0; // v = |g_F| mu_B B_x / 2, J
  double time_unit = 0.0;       // hbar / v, s
  Regime regime = Regime::sudden;

  ParabolicParams parabolic() const { return {epsilon, mu}; }
};

/// Linear Zeeman identification of the spin-1 parabolic Hamiltonian:
///   mu = B_z0 / B_x, eps mu = (hbar Bdot / (|g_F| mu_B B_x^2))^2, t_c = 4 B_z0 / Bdot.
/// The Zener time uses the m = +-1 diagonal slope |g_F| mu_B Bdot and coupling
/// v: B_x / (2 Bdot) (adiabatic) or sqrt(hbar / (|g_F| mu_B Bdot)) (sudden).
MappedParams map_fields(const LabFields& fields);

struct IcaValidation
{
  bool ok = false;
  double ratio = 0.0; // t_c / t_z
  double margin = 0.0;
};

/// ok iff t_c / t_z >= margin. margin must exceed 1.
IcaValidation validate_ica(const MappedParams& mapped, double margin = 5.0);

} // namespace spinorlz
