#include "spinorlz/special_functions.hpp"

#include <array>
#include <cmath>
#include <complex>

namespace spinorlz::special {

namespace {

// Shift so that Stirling's series is accurate to double precision.
constexpr int kShift = 16;

// B_{2k} / (2k (2k-1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
  1.0 / 12.0,       -1.0 / 360.0,        1.0 / 1260.0,     -1.0 / 1680.0,
  1.0 / 1188.0,     -691.0 / 360360.0,   1.0 / 156.0,      -3617.0 / 122400.0,
};

} // namespace

double arg_gamma_one_minus_i(double y)
{
  // ln Gamma(z) = ln Gamma(z + N) - sum_{k<N} ln(z + k); every z + k has a
  // positive real part, so the principal logs sum to the continuous branch.
  const std::complex<double> z(1.0, -y);
  const std::complex<double> w = z + static_cast<double>(kShift);

  const std::complex<double> inv = 1.0 / w;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series = 0.0;
  std::complex<double> power = inv;
  for (double c : kStirling)
  {
    series += c * power;
    power *= inv2;
  }
  const std::complex<double> stirling = (w - 0.5) * std::log(w) - w + series;

  double shift = 0.0;
  for (int k = 0; k < kShift; ++k)
    shift += std::atan2(-y, 1.0 + k);

  return stirling.imag() - shift;
}

} // namespace spinorlz::special
