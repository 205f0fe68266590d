#include "spinorlz/tdse_oracle.hpp"

#include "spinorlz/constants.hpp"
#include "spinorlz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

namespace spinorlz {

namespace {

constexpr double kInitialNormTol = 1e-9;

// Commutator-free Magnus, order 4: Gauss nodes and mixing weights.
const double kSqrt3 = std::sqrt(3.0);
const double kNode1 = 0.5 - kSqrt3 / 6.0;
const double kNode2 = 0.5 + kSqrt3 / 6.0;
const double kWeightA = (3.0 - 2.0 * kSqrt3) / 12.0;
const double kWeightB = (3.0 + 2.0 * kSqrt3) / 12.0;

class Generator
{
public:
  explicit Generator(const HamiltonianSpec& spec)
    : mSpec(spec)
  {
    const SpinOperators ops = make_spin_operators(spec.levels);
    mCoupling = 2.0 * spec.coupling * ops.sx;
    mSz = ops.sz.diagonal().real();
  }

  Matrix at(double tau) const
  {
    Matrix h = mCoupling;
    const double d = 2.0 * mSpec.detuning(tau);
    for (Eigen::Index k = 0; k < mSz.size(); ++k)
      h(k, k) += d * mSz(k);
    return h;
  }

  StateVector apply_exp(const Matrix& h, double dt, const StateVector& psi) const
  {
    mSolver.compute(h);
    const Eigen::VectorXd& w = mSolver.eigenvalues();
    const Matrix& v = mSolver.eigenvectors();
    StateVector coeffs = v.adjoint() * psi;
    for (Eigen::Index k = 0; k < w.size(); ++k)
      coeffs(k) *= std::polar(1.0, -w(k) * dt);
    return v * coeffs;
  }

  StateVector step(double tau, double h, const StateVector& psi) const
  {
    const Matrix h1 = at(tau + kNode1 * h);
    const Matrix h2 = at(tau + kNode2 * h);
    const StateVector half = apply_exp(kWeightB * h1 + kWeightA * h2, h, psi);
    return apply_exp(kWeightA * h1 + kWeightB * h2, h, half);
  }

private:
  const HamiltonianSpec& mSpec;
  Matrix mCoupling;
  Eigen::VectorXd mSz;
  mutable Eigen::SelfAdjointEigenSolver<Matrix> mSolver;
};

// Diabatic label for each energy-ordered eigenvector: index of its largest
// component. Throws if that is not a permutation.
std::vector<int> labels_of(const Matrix& vectors, double tau)
{
  const auto n = static_cast<int>(vectors.cols());
  std::vector<int> label(n);
  std::vector<bool> taken(n, false);
  for (int k = 0; k < n; ++k)
  {
    Eigen::Index arg = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&arg);
    if (taken[arg])
    {
      std::ostringstream msg;
      msg << "adiabatic labels are ambiguous at tau=" << tau
          << "; the point is too close to a crossing";
      throw InvalidArgument(msg.str());
    }
    taken[arg] = true;
    label[k] = static_cast<int>(arg);
  }
  return label;
}

double zener_scale(const HamiltonianSpec& spec)
{
  if (spec.kind == ModelKind::parabolic)
    return crossing_diagnostics(spec.parabolic).tau_z;
  const double lambda = spec.lz_lambda;
  return lambda >= 1.0 ? lambda : std::sqrt(lambda);
}

void check_window_covers_crossings(const HamiltonianSpec& spec, const IntegrationWindow& window,
                                   std::vector<std::string>& warnings)
{
  const double margin = 3.0 * zener_scale(spec) * spec.coupling;
  double first = 0.0;
  double last = 0.0;
  if (spec.kind == ModelKind::parabolic)
  {
    last = std::sqrt(spec.parabolic.mu / spec.parabolic.epsilon);
    first = -last;
  }
  if (window.tau_start > first - margin || window.tau_end < last + margin)
  {
    std::ostringstream msg;
    msg << "integration window [" << window.tau_start << ", " << window.tau_end
        << "] does not contain the crossing region [" << first - margin << ", "
        << last + margin << "]";
    warnings.push_back(msg.str());
  }
}

} // namespace

HamiltonianSpec HamiltonianSpec::landau_zener(double lambda, int levels)
{
  HamiltonianSpec spec;
  spec.kind = ModelKind::landau_zener;
  spec.levels = levels;
  spec.lz_lambda = lambda;
  spec.validate();
  return spec;
}

HamiltonianSpec HamiltonianSpec::parabolic_model(const ParabolicParams& params, int levels)
{
  HamiltonianSpec spec;
  spec.kind = ModelKind::parabolic;
  spec.levels = levels;
  spec.parabolic = params;
  spec.validate();
  return spec;
}

void HamiltonianSpec::validate() const
{
  if (levels < 2)
    throw InvalidArgument("HamiltonianSpec: level count must be >= 2");
  if (!std::isfinite(coupling) || coupling < 0)
    throw InvalidArgument("HamiltonianSpec: coupling must be finite and >= 0");
  if (kind == ModelKind::parabolic)
    parabolic.validate();
  else if (!std::isfinite(lz_lambda) || !(lz_lambda > 0))
    throw InvalidArgument("HamiltonianSpec: Landau-Zener parameter must be finite and > 0");
}

double HamiltonianSpec::detuning(double tau) const
{
  if (kind == ModelKind::parabolic)
    return parabolic.epsilon * tau * tau - parabolic.mu;
  return tau / lz_lambda;
}

IntegrationWindow IntegrationWindow::symmetric(double half_width)
{
  IntegrationWindow w{-half_width, half_width};
  w.validate();
  return w;
}

IntegrationWindow IntegrationWindow::around_crossings(const ParabolicParams& params,
                                                      double multiples)
{
  params.validate();
  return symmetric(multiples * params.tau_c());
}

void IntegrationWindow::validate() const
{
  if (!std::isfinite(tau_start) || !std::isfinite(tau_end) || !(tau_end > tau_start))
    throw InvalidArgument("IntegrationWindow: need finite tau_start < tau_end");
}

Matrix build_hamiltonian(const HamiltonianSpec& spec, double tau)
{
  spec.validate();
  return Generator(spec).at(tau);
}

Matrix energy_ordered_eigenvectors(const HamiltonianSpec& spec, double tau)
{
  Eigen::SelfAdjointEigenSolver<Matrix> eig(build_hamiltonian(spec, tau));
  if (eig.info() != Eigen::Success)
    throw NumericalError("energy_ordered_eigenvectors: eigendecomposition failed");
  // Eigen sorts ascending.
  return eig.eigenvectors().rowwise().reverse();
}

StateVector adiabatic_state(const HamiltonianSpec& spec, double tau, int label)
{
  if (label < 0 || label >= spec.levels)
    throw InvalidArgument("adiabatic_state: label out of range");
  const Matrix vectors = energy_ordered_eigenvectors(spec, tau);
  const std::vector<int> labels = labels_of(vectors, tau);
  const auto k = std::find(labels.begin(), labels.end(), label) - labels.begin();
  StateVector v = vectors.col(k);
  const Complex pivot = v(label);
  return v * (std::abs(pivot) / pivot);
}

std::vector<double> adiabatic_populations(const HamiltonianSpec& spec, double tau,
                                          const StateVector& psi)
{
  const Matrix vectors = energy_ordered_eigenvectors(spec, tau);
  const std::vector<int> labels = labels_of(vectors, tau);
  std::vector<double> pops(spec.levels, 0.0);
  for (int k = 0; k < spec.levels; ++k)
    pops[labels[k]] = std::norm(vectors.col(k).dot(psi));
  return pops;
}

OracleResult integrate(const HamiltonianSpec& spec, const IntegrationWindow& window,
                       const StateVector& initial, const OracleOptions& options)
{
  spec.validate();
  window.validate();
  if (!(options.rel_tol >= 1e-12 && options.rel_tol <= 1e-6))
    throw InvalidArgument("integrate: rel_tol must lie in [1e-12, 1e-6]");
  if (initial.size() != spec.levels)
    throw InvalidArgument("integrate: initial state has wrong dimension");
  if (!all_finite(initial) || std::abs(initial.norm() - 1.0) > kInitialNormTol)
    throw InvalidArgument("integrate: initial state must be finite and normalized");
  if (!options.allow_superposition && (initial.array().abs() > 0).count() != 1)
    throw InvalidArgument(
      "integrate: superposition initial states require OracleOptions::allow_superposition");

  OracleResult result;
  check_window_covers_crossings(spec, window, result.warnings);

  StateVector psi = initial;
  if (options.frame == InitialFrame::adiabatic)
  {
    psi.setZero();
    for (int k = 0; k < spec.levels; ++k)
      if (initial(k) != 0.0)
        psi += initial(k) * adiabatic_state(spec, window.tau_start, k);
  }

  const Generator gen(spec);
  const double tol = options.rel_tol;
  double tau = window.tau_start;
  const double span = window.tau_end - window.tau_start;
  double h = std::min(1e-2, 0.01 * span);

  while (tau < window.tau_end)
  {
    if (result.step_count + result.rejected_steps >= options.max_steps)
      throw IntegrationError("integrate: step budget exhausted", tau);
    const double remaining = window.tau_end - tau;
    const bool last = h >= remaining;
    const double dt = last ? remaining : h;
    if (dt < 1e-14 * std::max(1.0, std::abs(tau)) && !last)
      throw IntegrationError("integrate: step size underflow", tau);

    const StateVector full = gen.step(tau, dt, psi);
    const StateVector mid = gen.step(tau, 0.5 * dt, psi);
    const StateVector fine = gen.step(tau + 0.5 * dt, 0.5 * dt, mid);
    const double err = (fine - full).cwiseAbs().maxCoeff() / 15.0;

    if (err <= tol)
    {
      psi = fine;
      tau = last ? window.tau_end : tau + dt;
      ++result.step_count;
    }
    else
    {
      ++result.rejected_steps;
    }
    const double factor = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
    h = dt * std::clamp(factor, 0.2, 5.0);
  }

  result.final_state = psi;
  result.norm_drift = std::abs(psi.norm() - 1.0);
  result.populations.resize(spec.levels);
  for (int k = 0; k < spec.levels; ++k)
    result.populations[k] = std::norm(psi(k));
  result.adiabatic_populations = adiabatic_populations(spec, window.tau_end, psi);
  return result;
}

Matrix oracle_propagator(const HamiltonianSpec& spec, const IntegrationWindow& window,
                         double rel_tol)
{
  OracleOptions options;
  options.rel_tol = rel_tol;
  options.frame = InitialFrame::diabatic;
  Matrix u(spec.levels, spec.levels);
  for (int k = 0; k < spec.levels; ++k)
    u.col(k) = integrate(spec, window, basis_state(spec.levels, k), options).final_state;
  return u;
}

IcaComparison compare_with_ica(const HamiltonianSpec& spec, const IntegrationWindow& window,
                               const OracleOptions& options)
{
  spec.validate();
  if (spec.kind != ModelKind::parabolic)
    throw InvalidArgument("compare_with_ica: requires a parabolic Hamiltonian");

  IcaComparison cmp;
  cmp.levels = spec.levels;
  cmp.diagnostics = crossing_diagnostics(spec.parabolic);
  cmp.ica_flagged = !cmp.diagnostics.ica_satisfied(5.0);
  cmp.sigma = dynamical_phase_sigma(spec.parabolic);
  cmp.p_ica = transition_prob_1_to_n(spec.parabolic, spec.levels);

  cmp.run = integrate(spec, window, basis_state(spec.levels, 0), options);
  cmp.p_oracle = cmp.run.adiabatic_populations.back();
  cmp.abs_error = std::abs(cmp.p_oracle - cmp.p_ica);
  return cmp;
}

namespace {

double oracle_top_to_bottom(double eps_mu, double mu, int levels, double window_multiples,
                            const OracleOptions& options)
{
  const ParabolicParams params{eps_mu / mu, mu};
  const auto spec = HamiltonianSpec::parabolic_model(params, levels);
  const auto window = IntegrationWindow::around_crossings(params, window_multiples);
  return integrate(spec, window, basis_state(levels, 0), options).adiabatic_populations.back();
}

} // namespace

FringeComparison compare_fringe_minima(double eps_mu, double mu_lo, double mu_hi, int points,
                                       int levels, double window_multiples,
                                       const OracleOptions& options)
{
  if (!(eps_mu > 0) || !(mu_lo > 0) || !(mu_hi > mu_lo) || points < 5)
    throw InvalidArgument("compare_fringe_minima: need eps*mu > 0, 0 < mu_lo < mu_hi, points >= 5");

  FringeComparison out;
  out.eps_mu = eps_mu;
  out.levels = levels;

  const double lambda = 1.0 / (2.0 * std::sqrt(eps_mu));
  const double r = lz_amplitude(lambda);
  const double phi = lz_phase(lambda);

  std::vector<std::future<double>> jobs;
  out.points.resize(points);
  for (int i = 0; i < points; ++i)
  {
    FringePoint& pt = out.points[i];
    pt.mu = mu_lo + (mu_hi - mu_lo) * i / (points - 1);
    pt.epsilon = eps_mu / pt.mu;
    pt.sigma = dynamical_phase_sigma({pt.epsilon, pt.mu});
    pt.p_ica = std::pow(transition_prob_2level(r, phi, pt.sigma), levels - 1);
    jobs.push_back(std::async(std::launch::async, oracle_top_to_bottom, eps_mu, pt.mu, levels,
                              window_multiples, options));
  }
  for (int i = 0; i < points; ++i)
    out.points[i].p_oracle = jobs[i].get();

  // Refine each interior grid minimum of the oracle curve.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 1; i + 1 < points; ++i)
  {
    const auto& p = out.points;
    if (!(p[i].p_oracle <= p[i - 1].p_oracle && p[i].p_oracle < p[i + 1].p_oracle))
      continue;
    double a = p[i - 1].mu;
    double b = p[i + 1].mu;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = oracle_top_to_bottom(eps_mu, c, levels, window_multiples, options);
    double fd = oracle_top_to_bottom(eps_mu, d, levels, window_multiples, options);
    while (b - a > 1e-7 * b)
    {
      if (fc < fd)
      {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = oracle_top_to_bottom(eps_mu, c, levels, window_multiples, options);
      }
      else
      {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = oracle_top_to_bottom(eps_mu, d, levels, window_multiples, options);
      }
    }
    const double mu_min = 0.5 * (a + b);
    out.oracle_minima_sigma.push_back(dynamical_phase_sigma({eps_mu / mu_min, mu_min}));
  }

  // sin(sigma/2 + phi) = 0  =>  sigma = 2 (k pi - phi)
  const double period = 2.0 * constants::pi;
  const double sigma_lo = out.points.front().sigma;
  const double sigma_hi = out.points.back().sigma;
  for (int k = static_cast<int>(std::floor((sigma_lo / 2 + phi) / constants::pi)) - 1;; ++k)
  {
    const double s = 2.0 * (k * constants::pi - phi);
    if (s > sigma_hi + period)
      break;
    if (s >= sigma_lo - period)
      out.ica_minima_sigma.push_back(s);
  }

  for (double s : out.oracle_minima_sigma)
  {
    double best = std::numeric_limits<double>::infinity();
    for (double t : out.ica_minima_sigma)
      best = std::min(best, std::abs(s - t));
    out.max_shift_fraction = std::max(out.max_shift_fraction, best / period);
  }
  return out;
}

} // namespace spinorlz
