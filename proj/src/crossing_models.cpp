#include "spinorlz/crossing_models.hpp"

#include "spinorlz/constants.hpp"
#include "spinorlz/errors.hpp"
#include "spinorlz/special_functions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace spinorlz {

using constants::pi;

namespace {

constexpr double kSigmaRelTol = 1e-10;
constexpr double kIcaWarnMargin = 5.0;

void require_lambda(double lambda, const char* what)
{
  if (!std::isfinite(lambda) || lambda < 0)
    throw InvalidArgument(std::string(what) + ": Landau-Zener parameter must be finite and >= 0");
}

} // namespace

const char* to_string(Regime regime)
{
  return regime == Regime::adiabatic ? "adiabatic" : "sudden";
}

double LZParams::landau_zener_parameter() const
{
  validate();
  return coupling * coupling / (hbar * slope);
}

LZParams LZParams::from_lambda(double lambda)
{
  if (!std::isfinite(lambda) || lambda <= 0)
    throw InvalidArgument("LZParams::from_lambda: Lambda must be finite and > 0");
  return LZParams{1.0 / lambda, 1.0, 1.0};
}

void LZParams::validate() const
{
  if (!(std::isfinite(slope) && slope > 0) || !(std::isfinite(coupling) && coupling > 0) ||
      !(std::isfinite(hbar) && hbar > 0))
    throw InvalidArgument("LZParams: slope, coupling and hbar must be finite and positive");
}

ParabolicParams ParabolicParams::from_raw(double a, double b, double v, double hbar)
{
  if (!(a > 0) || !(v > 0) || !(hbar > 0) || !std::isfinite(b))
    throw InvalidArgument("ParabolicParams::from_raw: need a > 0, v > 0, hbar > 0");
  ParabolicParams p{hbar * hbar * a / (v * v * v), b / v};
  p.validate();
  return p;
}

void ParabolicParams::validate() const
{
  if (!std::isfinite(epsilon) || !(epsilon > 0))
    throw InvalidArgument("ParabolicParams: epsilon must be finite and > 0");
  if (!std::isfinite(mu) || !(mu > 0))
    throw InvalidArgument("ParabolicParams: mu must be > 0 (only the double-crossing regime is supported)");
}

double ParabolicParams::lambda_eff() const
{
  return 1.0 / (2.0 * std::sqrt(epsilon * mu));
}

double ParabolicParams::tau_c() const
{
  return 2.0 * std::sqrt(mu / epsilon);
}

double lz_amplitude(double lambda)
{
  require_lambda(lambda, "lz_amplitude");
  return std::exp(-0.5 * pi * lambda);
}

double lz_phase(double lambda)
{
  require_lambda(lambda, "lz_phase");
  if (lambda == 0.0)
    return 0.25 * pi;
  const double half = 0.5 * lambda;
  return 0.25 * pi + half * (std::log(half) - 1.0) + special::arg_gamma_one_minus_i(half);
}

TwoLevelPropagator lz_propagator(double r, double phi)
{
  if (!(r >= 0 && r <= 1) || !std::isfinite(phi))
    throw InvalidArgument("lz_propagator: need R in [0, 1] and finite phi");
  return {std::polar(std::sqrt(1.0 - r * r), -phi), -r};
}

TwoLevelPropagator lz_propagator(double lambda)
{
  return lz_propagator(lz_amplitude(lambda), lz_phase(lambda));
}

ZenerTime zener_time_lz(const LZParams& params)
{
  const double lambda = params.landau_zener_parameter();
  if (lambda >= 1.0)
    return {params.coupling / params.slope, Regime::adiabatic};
  return {std::sqrt(params.hbar / params.slope), Regime::sudden};
}

CrossingDiagnostics crossing_diagnostics(const ParabolicParams& params)
{
  params.validate();
  CrossingDiagnostics d;
  d.tau_c = params.tau_c();
  d.lambda_eff = params.lambda_eff();
  const double slope = 2.0 * std::sqrt(params.mu * params.epsilon);
  if (slope <= 1.0)
  {
    d.regime = Regime::adiabatic;
    d.tau_z = 1.0 / slope;
  }
  else
  {
    d.regime = Regime::sudden;
    d.tau_z = std::sqrt(1.0 / slope);
  }
  d.ica_margin = d.tau_c / d.tau_z;
  return d;
}

double dynamical_phase_sigma(const ParabolicParams& params)
{
  params.validate();
  const double eps = params.epsilon;
  const double mu = params.mu;
  auto integrand = [eps, mu](double tau) {
    const double detuning = eps * tau * tau - mu;
    return std::sqrt(detuning * detuning + 1.0);
  };

  double error = 0.0;
  const double upper = std::sqrt(mu / eps);
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
    integrand, 0.0, upper, 20, 1e-13, &error);
  if (!std::isfinite(integral) || error > kSigmaRelTol * integral)
    throw NumericalError("dynamical_phase_sigma: quadrature did not converge");
  return 4.0 * integral;
}

TwoLevelPropagator composite_alpha_beta(double r, double phi, double sigma)
{
  if (!(r >= 0 && r <= 1) || !std::isfinite(phi) || !std::isfinite(sigma))
    throw InvalidArgument("composite_alpha_beta: need R in [0, 1] and finite phases");
  const double r2 = r * r;
  const Complex alpha =
    std::polar(1.0, 0.5 * sigma) * (r2 + std::polar(1.0 - r2, -(sigma + 2.0 * phi)));
  const Complex beta(0.0, 2.0 * r * std::sqrt(1.0 - r2) * std::sin(phi + 0.5 * sigma));
  return {alpha, beta};
}

TwoLevelPropagator composite_alpha_beta(const ParabolicParams& params,
                                        std::vector<std::string>* warnings)
{
  const CrossingDiagnostics diag = crossing_diagnostics(params);
  if (warnings && !diag.ica_satisfied(kIcaWarnMargin))
  {
    std::ostringstream msg;
    msg << "independent crossing approximation questionable: tau_c/tau_z = "
        << diag.ica_margin << " < " << kIcaWarnMargin;
    warnings->push_back(msg.str());
  }
  const double lambda = diag.lambda_eff;
  return composite_alpha_beta(lz_amplitude(lambda), lz_phase(lambda),
                              dynamical_phase_sigma(params));
}

double transition_prob_2level(double r, double phi, double sigma)
{
  const double s = std::sin(0.5 * sigma + phi);
  return 4.0 * r * r * (1.0 - r * r) * s * s;
}

double transition_prob_2level(const ParabolicParams& params)
{
  const double lambda = params.lambda_eff();
  return transition_prob_2level(lz_amplitude(lambda), lz_phase(lambda),
                                dynamical_phase_sigma(params));
}

double transition_prob_1_to_3(double r, double phi, double sigma)
{
  const double p = transition_prob_2level(r, phi, sigma);
  return p * p;
}

double transition_prob_1_to_3(const ParabolicParams& params)
{
  const double p = transition_prob_2level(params);
  return p * p;
}

double transition_prob_1_to_n(const ParabolicParams& params, int levels)
{
  if (levels < 2)
    throw InvalidArgument("transition_prob_1_to_n: level count must be >= 2");
  return std::pow(transition_prob_2level(params), levels - 1);
}

} // namespace spinorlz
