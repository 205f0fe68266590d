#include "test_support.hpp"

#include "spinorlz/crossing_models.hpp"
#include "spinorlz/errors.hpp"
#include "spinorlz/majorana.hpp"
#include "spinorlz/tdse_oracle.hpp"

#include <doctest.h>

#include <numeric>
#include <vector>

using namespace spinorlz;
using spinorlz::test::max_abs_diff;

namespace {

double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

const ParabolicParams kRef{2.0, 5.0};

} // namespace

TEST_CASE("build_hamiltonian")
{
  SUBCASE("two-level parabolic vanishes on the diagonal at the crossings")
  {
    const auto spec = HamiltonianSpec::parabolic_model(kRef, 2);
    for (double tau : {-std::sqrt(2.5), std::sqrt(2.5)})
    {
      const Matrix h = build_hamiltonian(spec, tau);
      CHECK(std::abs(h(0, 0)) < 1e-14);
      CHECK(std::abs(h(1, 1)) < 1e-14);
      CHECK(std::abs(h(0, 1) - 1.0) < 1e-15);
    }
  }
  SUBCASE("three-level parabolic at tau = 0")
  {
    const Matrix h = build_hamiltonian(HamiltonianSpec::parabolic_model(kRef, 3), 0.0);
    Matrix expected = Matrix::Zero(3, 3);
    expected(0, 0) = -10.0;
    expected(2, 2) = 10.0;
    expected(0, 1) = expected(1, 0) = expected(1, 2) = expected(2, 1) = std::sqrt(2.0);
    CHECK(max_abs_diff(h, expected) < 1e-14);
  }
  SUBCASE("Landau-Zener at tau = 0 is the pure coupling")
  {
    Matrix expected(2, 2);
    expected << 0.0, 1.0, 1.0, 0.0;
    CHECK(max_abs_diff(build_hamiltonian(HamiltonianSpec::landau_zener(0.7, 2), 0.0), expected) <
          1e-15);
  }
  SUBCASE("always Hermitian")
  {
    for (int n = 2; n <= 6; ++n)
      for (double tau : {-7.0, -1.0, 0.3, 4.0})
      {
        CHECK(is_hermitian(build_hamiltonian(HamiltonianSpec::parabolic_model(kRef, n), tau)));
        CHECK(is_hermitian(build_hamiltonian(HamiltonianSpec::landau_zener(1.3, n), tau)));
      }
  }
  SUBCASE("spec validation")
  {
    CHECK_THROWS_AS(build_hamiltonian(HamiltonianSpec::parabolic_model(kRef, 1), 0.0), InvalidArgument);
    CHECK_THROWS_AS(build_hamiltonian(HamiltonianSpec::parabolic_model({1.0, -1.0}, 2), 0.0),
                    InvalidArgument);
    CHECK_THROWS_AS(build_hamiltonian(HamiltonianSpec::landau_zener(0.0, 2), 0.0), InvalidArgument);
    HamiltonianSpec bad = HamiltonianSpec::landau_zener(1.0, 2);
    bad.coupling = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  }
}

TEST_CASE("adiabatic states")
{
  const auto spec = HamiltonianSpec::parabolic_model(kRef, 3);
  const Matrix v = energy_ordered_eigenvectors(spec, 0.4);
  CHECK(unitarity_defect(v) < 1e-12);
  const Matrix h = build_hamiltonian(spec, 0.4);
  const Matrix d = v.adjoint() * h * v;
  CHECK(d(0, 0).real() >= d(1, 1).real());
  CHECK(d(1, 1).real() >= d(2, 2).real());
  const StateVector s = adiabatic_state(spec, -30.0, 0);
  CHECK(std::norm(s(0)) > 1.0 - 1e-5);
  CHECK_THROWS_AS(adiabatic_state(spec, 0.0, 3), InvalidArgument);
}

TEST_CASE("two-level parabolic oracle matches the ICA at eps = 2, mu = 5")
{
  const auto spec = HamiltonianSpec::parabolic_model(kRef, 2);
  const IcaComparison c = compare_with_ica(spec, IntegrationWindow::around_crossings(kRef, 8.0));
  CHECK(c.abs_error < 0.02);
  CHECK(c.p_ica == doctest::Approx(transition_prob_2level(kRef)));
  CHECK_FALSE(c.ica_flagged);
  CHECK(c.run.norm_drift < 1e-9);
  CHECK(std::abs(total(c.run.populations) - 1.0) < 1e-9);
  CHECK(c.run.warnings.empty());
  // diabatic readout agrees with the adiabatic one far from the crossings
  CHECK(std::abs(c.run.populations.back() - c.p_oracle) < 1e-3);
  // regression value of this oracle (CF4 Magnus, rel_tol 1e-10)
  CHECK(c.p_oracle == doctest::Approx(0.50809538).epsilon(1e-5));
}

TEST_CASE("three-level oracle is consistent with the squared two-level run")
{
  const auto window = IntegrationWindow::around_crossings(kRef, 8.0);
  const IcaComparison c2 = compare_with_ica(HamiltonianSpec::parabolic_model(kRef, 2), window);
  const IcaComparison c3 = compare_with_ica(HamiltonianSpec::parabolic_model(kRef, 3), window);
  CHECK(c3.abs_error < 0.02);
  CHECK(std::abs(c3.p_oracle - c2.p_oracle * c2.p_oracle) < 0.02);
  // exact: the spin-1 Hamiltonian is the spin-1 representation of the two-level one
  CHECK(std::abs(c3.p_oracle - c2.p_oracle * c2.p_oracle) < 1e-6);
  CHECK(c3.run.norm_drift < 1e-9);
}

TEST_CASE("norm drift stays below ten times the tolerance")
{
  const auto spec = HamiltonianSpec::parabolic_model(kRef, 3);
  const auto window = IntegrationWindow::around_crossings(kRef, 4.0);
  for (double tol : {1e-6, 1e-8, 1e-10, 1e-12})
  {
    OracleOptions o;
    o.rel_tol = tol;
    const OracleResult r = integrate(spec, window, basis_state(3, 0), o);
    CAPTURE(tol);
    CHECK(r.norm_drift < 10.0 * tol);
    for (double p : r.populations)
    {
      CHECK(p >= -1e-12);
      CHECK(p <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("step halving: tightening the tolerance leaves populations unchanged")
{
  const auto spec = HamiltonianSpec::parabolic_model(kRef, 2);
  const auto window = IntegrationWindow::around_crossings(kRef, 4.0);
  OracleOptions coarse;
  coarse.rel_tol = 1e-8;
  OracleOptions fine;
  fine.rel_tol = 1e-12;
  const OracleResult a = integrate(spec, window, basis_state(2, 0), coarse);
  const OracleResult b = integrate(spec, window, basis_state(2, 0), fine);
  CHECK(b.step_count > a.step_count);
  CHECK(std::abs(a.populations[1] - b.populations[1]) < 1e-6);
  CHECK(max_abs_diff(a.final_state, b.final_state) < 1e-5);
}

TEST_CASE("window convergence in the number of crossing separations")
{
  for (int n : {2, 3})
  {
    const auto spec = HamiltonianSpec::parabolic_model(kRef, n);
    std::vector<double> gaps;
    OracleResult prev = integrate(spec, IntegrationWindow::around_crossings(kRef, 4.0), basis_state(n, 0));
    for (double w : {8.0, 16.0})
    {
      const OracleResult next =
        integrate(spec, IntegrationWindow::around_crossings(kRef, w), basis_state(n, 0));
      double gap = 0.0;
      for (int k = 0; k < n; ++k)
        gap = std::max(gap, std::abs(prev.adiabatic_populations[k] - next.adiabatic_populations[k]));
      gaps.push_back(gap);
      prev = next;
    }
    // adiabatic-frame populations are settled at integrator tolerance
    CHECK(gaps[0] < 1e-6);
    CHECK(gaps[1] < 1e-6);
  }
}

TEST_CASE("three-level oracle equals the lifted two-level oracle propagator")
{
  const auto window = IntegrationWindow::around_crossings(kRef, 4.0);
  const Matrix u2 = oracle_propagator(HamiltonianSpec::parabolic_model(kRef, 2), window);
  const Matrix u3 = oracle_propagator(HamiltonianSpec::parabolic_model(kRef, 3), window);
  const Matrix lifted = spinorlz::lift(TwoLevelPropagator::from_matrix(u2, 1e-8), 3, 1e-8);
  const Eigen::MatrixXd p3 = u3.cwiseAbs2();
  const Eigen::MatrixXd pl = lifted.cwiseAbs2();
  CHECK((p3 - pl).cwiseAbs().maxCoeff() < 0.01);
  CHECK((p3 - pl).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("Landau-Zener oracle reproduces R^(2(n-1))")
{
  for (int n : {2, 3, 4})
    for (double lambda : {0.2, 0.5, 1.0})
    {
      const OracleResult r = integrate(HamiltonianSpec::landau_zener(lambda, n),
                                       IntegrationWindow::symmetric(200.0), basis_state(n, 0));
      const double rr = lz_amplitude(lambda);
      CAPTURE(n);
      CAPTURE(lambda);
      CHECK(std::abs(r.adiabatic_populations.front() - std::pow(rr * rr, n - 1)) < 1e-6);
      CHECK(r.norm_drift < 1e-9);
    }
}

TEST_CASE("uncoupled levels")
{
  HamiltonianSpec spec = HamiltonianSpec::landau_zener(1.0, 2);
  spec.coupling = 0.0;
  OracleOptions o;
  o.frame = InitialFrame::diabatic;
  const auto window = IntegrationWindow::symmetric(20.0);
  const OracleResult r = integrate(spec, window, basis_state(2, 0), o);
  // diabatic populations are untouched
  CHECK(r.populations[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.populations[1] < 1e-12);
  // while the occupied level moves from the lower to the upper energy branch
  const Matrix before = energy_ordered_eigenvectors(spec, window.tau_start);
  const Matrix after = energy_ordered_eigenvectors(spec, window.tau_end);
  CHECK(std::norm(before.col(1).dot(basis_state(2, 0))) == doctest::Approx(1.0));
  CHECK(std::norm(after.col(0).dot(r.final_state)) == doctest::Approx(1.0));
}

TEST_CASE("ICA breakdown is flagged")
{
  const ParabolicParams p{10.0, 0.1};
  const IcaComparison c =
    compare_with_ica(HamiltonianSpec::parabolic_model(p, 2), IntegrationWindow::symmetric(60.0));
  CHECK(c.ica_flagged);
  CHECK(c.diagnostics.ica_margin < 5.0);
  CHECK(c.abs_error > 0.1);
}

TEST_CASE("deep adiabatic limit transfers nothing")
{
  const ParabolicParams p{1e-3, 5.0};
  REQUIRE(lz_amplitude(p.lambda_eff()) < 1e-4);
  const IcaComparison c =
    compare_with_ica(HamiltonianSpec::parabolic_model(p, 2), IntegrationWindow::around_crossings(p, 2.0));
  CHECK(c.p_ica < 1e-6);
  CHECK(c.p_oracle < 1e-6);
}

TEST_CASE("integrate error paths")
{
  const auto spec = HamiltonianSpec::parabolic_model(kRef, 2);
  const auto window = IntegrationWindow::around_crossings(kRef, 4.0);

  OracleOptions o;
  o.rel_tol = 1e-13;
  CHECK_THROWS_AS(integrate(spec, window, basis_state(2, 0), o), InvalidArgument);
  o.rel_tol = 1e-5;
  CHECK_THROWS_AS(integrate(spec, window, basis_state(2, 0), o), InvalidArgument);

  StateVector unnormalized = basis_state(2, 0) * 2.0;
  CHECK_THROWS_AS(integrate(spec, window, unnormalized), InvalidArgument);
  CHECK_THROWS_AS(integrate(spec, window, basis_state(3, 0)), InvalidArgument);

  StateVector sup(2);
  sup << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(integrate(spec, window, sup), InvalidArgument);
  OracleOptions allow;
  allow.allow_superposition = true;
  allow.frame = InitialFrame::diabatic;
  CHECK(integrate(spec, window, sup, allow).norm_drift < 1e-9);

  CHECK_THROWS_AS(IntegrationWindow::symmetric(-1.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(integrate(spec, IntegrationWindow{1.0, 1.0}, basis_state(2, 0)), InvalidArgument);

  OracleOptions tiny;
  tiny.max_steps = 10;
  try
  {
    integrate(spec, window, basis_state(2, 0), tiny);
    FAIL("expected IntegrationError");
  }
  catch (const IntegrationError& e)
  {
    CHECK(e.tau() > window.tau_start);
    CHECK(e.tau() < window.tau_end);
  }

  const OracleResult narrow = integrate(spec, IntegrationWindow::symmetric(0.5), basis_state(2, 0));
  CHECK_FALSE(narrow.warnings.empty());

  CHECK_THROWS_AS(compare_with_ica(HamiltonianSpec::landau_zener(1.0, 2), window), InvalidArgument);
  CHECK_THROWS_AS(compare_fringe_minima(10.0, 6.0, 4.0, 20), InvalidArgument);
  CHECK_THROWS_AS(compare_fringe_minima(10.0, 4.0, 6.0, 3), InvalidArgument);
}
