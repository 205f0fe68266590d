#include "cli.hpp"

#include "report.hpp"

#include "spinorlz/crossing_models.hpp"
#include "spinorlz/errors.hpp"
#include "spinorlz/field_mapping.hpp"
#include "spinorlz/interferometer.hpp"
#include "spinorlz/majorana.hpp"
#include "spinorlz/spinor_gp.hpp"
#include "spinorlz/tdse_oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

namespace spinorlz::cli {

using Json = nlohmann::ordered_json;

namespace {

#ifndef SPINORLZ_DATA_DIR
#define SPINORLZ_DATA_DIR "data"
#endif

enum class Format
{
  csv,
  json,
};

/// Effective parameters of one run, echoed into every output.
class Params
{
public:
  void add(const std::string& key, double value) { mItems.emplace_back(key, format_number(value)); }
  void add(const std::string& key, int value) { mItems.emplace_back(key, std::to_string(value)); }
  void add(const std::string& key, const std::string& value) { mItems.emplace_back(key, value); }

  std::string line() const
  {
    std::string s;
    for (const auto& [k, v] : mItems)
      s += (s.empty() ? "" : " ") + k + "=" + v;
    return s;
  }

  Json json() const
  {
    Json j = Json::object();
    for (const auto& [k, v] : mItems)
      j[k] = v;
    return j;
  }

private:
  std::vector<std::pair<std::string, std::string>> mItems;
};

struct Output
{
  std::string path;
  Format format = Format::json;
};

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const Matrix& m)
{
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
  {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

void flatten(const std::string& prefix, const Json& value, std::ostream& os)
{
  if (value.is_object())
  {
    for (const auto& [k, v] : value.items())
      flatten(prefix.empty() ? k : prefix + "." + k, v, os);
  }
  else if (value.is_array())
  {
    for (std::size_t i = 0; i < value.size(); ++i)
      flatten(prefix + "." + std::to_string(i), value[i], os);
  }
  else if (value.is_number_float())
  {
    os << prefix << ',' << format_number(value.get<double>()) << '\n';
  }
  else if (value.is_string())
  {
    os << prefix << ',' << value.get<std::string>() << '\n';
  }
  else
  {
    os << prefix << ',' << value.dump() << '\n';
  }
}

class Emitter
{
public:
  Emitter(const Output& output, std::ostream& fallback)
    : mFormat(output.format), mStream(&fallback)
  {
    if (!output.path.empty())
    {
      mFile.open(output.path, std::ios::binary);
      if (!mFile)
        throw IoError("cannot open output file " + output.path);
      mStream = &mFile;
    }
  }

  std::ostream& stream() { return *mStream; }
  Format format() const { return mFormat; }

  void record(const std::string& command, const Params& params, Json body)
  {
    if (mFormat == Format::json)
    {
      Json j;
      j["command"] = command;
      j["config"] = params.json();
      for (auto& [k, v] : body.items())
        j[k] = v;
      stream() << j.dump(2) << '\n';
    }
    else
    {
      stream() << "# spinorlz " << command << ": " << params.line() << '\n';
      stream() << "key,value\n";
      flatten("", body, stream());
    }
    finish();
  }

  void finish()
  {
    stream().flush();
    if (!*mStream)
      throw IoError("failed writing output");
  }

private:
  Format mFormat;
  std::ofstream mFile;
  std::ostream* mStream;
};

Json propagator_json(const TwoLevelPropagator& p)
{
  return Json{{"alpha", complex_json(p.alpha)}, {"beta", complex_json(p.beta)}};
}

Json diagnostics_json(const CrossingDiagnostics& d)
{
  return Json{{"tau_c", d.tau_c},           {"tau_z", d.tau_z},
              {"lambda", d.lambda_eff},     {"ica_margin", d.ica_margin},
              {"regime", to_string(d.regime)}};
}

Json numbers(const std::vector<double>& v)
{
  Json a = Json::array();
  for (double x : v)
    a.push_back(x);
  return a;
}

SpeciesParams resolve_species(const std::string& name)
{
  if (std::filesystem::exists(name))
    return load_species(name);
  const std::filesystem::path bundled =
    std::filesystem::path(SPINORLZ_DATA_DIR) / "species" / (name + ".cfg");
  if (std::filesystem::exists(bundled))
    return load_species(bundled);
  if (name == "rb87")
    return rubidium87();
  if (name == "na23")
    return sodium23();
  throw InvalidArgument("unknown species '" + name + "' (use rb87, na23 or a file path)");
}

Spinor parse_spinor(const std::string& text)
{
  // "re,im;re,im;re,im" or "a,b,c" (real amplitudes)
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  const bool complexForm = text.find(';') != std::string::npos;
  while (std::getline(in, item, complexForm ? ';' : ','))
    parts.push_back(item);
  if (parts.size() != 3)
    throw InvalidArgument("--zeta needs three components");

  auto number = [](const std::string& s) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw InvalidArgument("--zeta: cannot parse '" + s + "'");
    return x;
  };

  Spinor z{};
  for (std::size_t k = 0; k < 3; ++k)
  {
    if (complexForm)
    {
      const auto comma = parts[k].find(',');
      if (comma == std::string::npos)
        throw InvalidArgument("--zeta: complex components are written re,im");
      z[k] = {number(parts[k].substr(0, comma)), number(parts[k].substr(comma + 1))};
    }
    else
    {
      z[k] = number(parts[k]);
    }
  }
  double norm = 0.0;
  for (const auto& c : z)
    norm += std::norm(c);
  if (!(norm > 0))
    throw InvalidArgument("--zeta: zero spinor");
  for (auto& c : z)
    c /= std::sqrt(norm);
  return z;
}

void add_output_options(CLI::App* cmd, Output& out)
{
  cmd->add_option("-o,--output", out.path, "Output file (default: stdout)");
  cmd->add_option("--format", out.format, "csv or json")
    ->transform(CLI::CheckedTransformer(
      std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
}

} // namespace

std::string format_number(double x)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Level-crossing interferometry for spinor condensates"};
  app.set_config("--config", "", "Config file (INI/TOML; command-line flags take precedence)");
  app.require_subcommand(1);

  std::function<void()> action;
  Output output;

  // lz
  double lzLambda = 1.0;
  int lzLevels = 2;
  auto* lz = app.add_subcommand("lz", "Landau-Zener propagator, lifted to n levels");
  lz->add_option("--lambda", lzLambda, "Landau-Zener parameter")->required();
  lz->add_option("--levels", lzLevels, "Level count")->capture_default_str();
  add_output_options(lz, output);
  lz->callback([&] {
    action = [&] {
      Params p;
      p.add("lambda", lzLambda);
      p.add("levels", lzLevels);
      const TwoLevelPropagator u = lz_propagator(lzLambda);
      const Matrix m = lift(u, lzLevels);
      Json body{{"R", lz_amplitude(lzLambda)},
                {"phi", lz_phase(lzLambda)},
                {"two_level", propagator_json(u)},
                {"unitarity_defect", unitarity_defect(m)},
                {"matrix", matrix_json(m)}};
      Emitter(output, out).record("lz", p, body);
    };
  });

  // parabolic
  double eps = 2.0;
  double mu = 5.0;
  int paraLevels = 3;
  auto* para = app.add_subcommand("parabolic", "ICA propagator of the parabolic double crossing");
  para->add_option("--eps", eps, "Scaled curvature epsilon")->capture_default_str();
  para->add_option("--mu", mu, "Scaled bias mu")->capture_default_str();
  para->add_option("--levels", paraLevels, "Level count")->capture_default_str();
  add_output_options(para, output);
  para->callback([&] {
    action = [&] {
      Params p;
      p.add("eps", eps);
      p.add("mu", mu);
      p.add("levels", paraLevels);
      const ParabolicParams params{eps, mu};
      std::vector<std::string> warnings;
      const TwoLevelPropagator u = composite_alpha_beta(params, &warnings);
      const double lambda = params.lambda_eff();
      const Matrix lifted = lift(u, paraLevels, 1e-10);
      Json body{{"diagnostics", diagnostics_json(crossing_diagnostics(params))},
                {"R", lz_amplitude(lambda)},
                {"phi", lz_phase(lambda)},
                {"sigma", dynamical_phase_sigma(params)},
                {"two_level", propagator_json(u)},
                {"P_1_to_2", transition_prob_2level(params)},
                {"P_1_to_3", transition_prob_1_to_3(params)},
                {"P_1_to_n", transition_prob_1_to_n(params, paraLevels)},
                {"matrix", matrix_json(lifted)},
                {"warnings", warnings}};
      Emitter(output, out).record("parabolic", p, body);
    };
  });

  // lift
  double aRe = 1.0, aIm = 0.0, bRe = 0.0, bIm = 0.0;
  int liftLevels = 3;
  auto* lf = app.add_subcommand("lift", "Lift an SU(2) pair (alpha, beta) to n levels");
  lf->add_option("--alpha-re", aRe)->capture_default_str();
  lf->add_option("--alpha-im", aIm)->capture_default_str();
  lf->add_option("--beta-re", bRe)->capture_default_str();
  lf->add_option("--beta-im", bIm)->capture_default_str();
  lf->add_option("--levels", liftLevels)->capture_default_str();
  add_output_options(lf, output);
  lf->callback([&] {
    action = [&] {
      Params p;
      p.add("alpha_re", aRe);
      p.add("alpha_im", aIm);
      p.add("beta_re", bRe);
      p.add("beta_im", bIm);
      p.add("levels", liftLevels);
      const Matrix m = lift({{aRe, aIm}, {bRe, bIm}}, liftLevels, 1e-9);
      Emitter(output, out).record(
        "lift", p, Json{{"unitarity_defect", unitarity_defect(m)}, {"matrix", matrix_json(m)}});
    };
  });

  // oracle
  std::string model = "parabolic";
  int oracleLevels = 2;
  double oEps = 2.0, oMu = 5.0, oLambda = 1.0, window = 8.0, rtol = 1e-10;
  std::string frame = "adiabatic";
  bool fringes = false;
  double muFrom = 4.0, muTo = 6.0;
  int fringePoints = 41;
  std::size_t maxSteps = OracleOptions{}.max_steps;
  auto* orc = app.add_subcommand("oracle", "Integrate the Schroedinger equation and compare with the ICA");
  orc->add_option("--model", model, "parabolic or lz")
    ->check(CLI::IsMember({"parabolic", "lz"}))
    ->capture_default_str();
  orc->add_option("--levels", oracleLevels)->capture_default_str();
  orc->add_option("--eps", oEps)->capture_default_str();
  orc->add_option("--mu", oMu)->capture_default_str();
  orc->add_option("--lambda", oLambda, "Landau-Zener parameter (lz model)")->capture_default_str();
  orc->add_option("--window", window,
                  "Half-width: multiples of tau_c (parabolic) or scaled time (lz)")
    ->capture_default_str();
  orc->add_option("--rtol", rtol)->capture_default_str();
  orc->add_option("--max-steps", maxSteps, "Step budget per integration")->capture_default_str();
  orc->add_option("--frame", frame, "Initial frame")
    ->check(CLI::IsMember({"adiabatic", "diabatic"}))
    ->capture_default_str();
  orc->add_flag("--fringes", fringes, "Also compare fringe minima over a mu sweep at fixed eps*mu");
  orc->add_option("--mu-from", muFrom)->capture_default_str();
  orc->add_option("--mu-to", muTo)->capture_default_str();
  orc->add_option("--points", fringePoints)->capture_default_str();
  add_output_options(orc, output);
  orc->callback([&] {
    action = [&] {
      Params p;
      p.add("model", model);
      p.add("levels", oracleLevels);
      OracleOptions options;
      options.rel_tol = rtol;
      options.max_steps = maxSteps;
      options.frame = frame == "adiabatic" ? InitialFrame::adiabatic : InitialFrame::diabatic;
      p.add("rtol", rtol);
      p.add("frame", frame);
      p.add("window", window);
      Json body;
      if (model == "parabolic")
      {
        p.add("eps", oEps);
        p.add("mu", oMu);
        const ParabolicParams params{oEps, oMu};
        const auto spec = HamiltonianSpec::parabolic_model(params, oracleLevels);
        const IcaComparison cmp =
          compare_with_ica(spec, IntegrationWindow::around_crossings(params, window), options);
        body = Json{{"P_oracle", cmp.p_oracle},
                    {"P_ica", cmp.p_ica},
                    {"abs_error", cmp.abs_error},
                    {"sigma", cmp.sigma},
                    {"ica_flagged", cmp.ica_flagged},
                    {"diagnostics", diagnostics_json(cmp.diagnostics)},
                    {"populations", numbers(cmp.run.populations)},
                    {"adiabatic_populations", numbers(cmp.run.adiabatic_populations)},
                    {"norm_drift", cmp.run.norm_drift},
                    {"steps", cmp.run.step_count},
                    {"warnings", cmp.run.warnings}};
        if (fringes)
        {
          p.add("mu_from", muFrom);
          p.add("mu_to", muTo);
          p.add("points", fringePoints);
          const FringeComparison fc = compare_fringe_minima(oEps * oMu, muFrom, muTo,
                                                            fringePoints, oracleLevels, window,
                                                            options);
          body["fringes"] = Json{{"eps_mu", fc.eps_mu},
                                 {"oracle_minima_sigma", numbers(fc.oracle_minima_sigma)},
                                 {"ica_minima_sigma", numbers(fc.ica_minima_sigma)},
                                 {"max_shift_fraction", fc.max_shift_fraction}};
        }
      }
      else
      {
        p.add("lambda", oLambda);
        const auto spec = HamiltonianSpec::landau_zener(oLambda, oracleLevels);
        const OracleResult r = integrate(spec, IntegrationWindow::symmetric(window),
                                         basis_state(oracleLevels, 0), options);
        const double rr = lz_amplitude(oLambda);
        const double predicted = std::pow(rr * rr, oracleLevels - 1);
        body = Json{{"P_stay_oracle", r.adiabatic_populations.front()},
                    {"P_stay_lz", predicted},
                    {"abs_error", std::abs(r.adiabatic_populations.front() - predicted)},
                    {"populations", numbers(r.populations)},
                    {"adiabatic_populations", numbers(r.adiabatic_populations)},
                    {"norm_drift", r.norm_drift},
                    {"steps", r.step_count},
                    {"warnings", r.warnings}};
      }
      Emitter(output, out).record("oracle", p, body);
    };
  });

  // gp
  std::string species = "rb87";
  double nmax = 1e14, density = 1e14, duration = 100e-6, gpRtol = 1e-12;
  std::string zeta = "0.5773502691896258,0.5773502691896258,0.5773502691896258";
  auto* gp = app.add_subcommand("gp", "Single-mode spin-1 GP phases between the crossings");
  gp->add_option("--species", species, "rb87, na23 or a species file")->capture_default_str();
  gp->add_option("--nmax", nmax, "Peak density [cm^-3]")->capture_default_str();
  gp->add_option("--density", density, "Uniform density [cm^-3]")->capture_default_str();
  gp->add_option("--duration", duration, "Evolution time [s]")->capture_default_str();
  gp->add_option("--zeta", zeta, "Initial spinor: a,b,c or re,im;re,im;re,im (normalized)")
    ->capture_default_str();
  gp->add_option("--rtol", gpRtol)->capture_default_str();
  add_output_options(gp, output);
  gp->callback([&] {
    action = [&] {
      SpeciesParams s = resolve_species(species);
      s.n_max_cm3 = nmax;
      Params p;
      p.add("species", s.name);
      p.add("nmax", nmax);
      p.add("density", density);
      p.add("duration", duration);
      p.add("zeta", zeta);
      p.add("rtol", gpRtol);
      const CouplingConstants cc = coupling_constants(s);
      const SMATrajectory traj = integrate_sma({parse_spinor(zeta), density, 0.0}, s, duration, gpRtol);
      const GPPhases phases = extract_gp_propagator(traj);
      const auto pop0 = traj.states.front().populations();
      const auto pop1 = traj.states.back().populations();
      Json body{{"citation", s.citation},
                {"lambda_s", cc.lambda_s},
                {"lambda_a", cc.lambda_a},
                {"gamma", traj.gamma},
                {"theta1", phases.theta1},
                {"theta_m1", phases.theta_m1},
                {"U_GP", matrix_json(phases.propagator())},
                {"initial_populations", numbers({pop0[0], pop0[1], pop0[2]})},
                {"final_populations", numbers({pop1[0], pop1[1], pop1[2]})},
                {"max_norm_drift", traj.max_norm_drift},
                {"max_magnetization_drift", traj.max_magnetization_drift},
                {"max_rate_bound_ratio", traj.max_rate_bound_ratio},
                {"steps", traj.steps}};
      Emitter(output, out).record("gp", p, body);
    };
  });

  // interferometer and scan share the base configuration
  std::optional<double> cfgEps, cfgMu;
  double cfgR = 1.0 / std::sqrt(2.0), cfgPhi = 0.0, cfgSigma = 0.0, theta1 = 0.0, thetaM1 = 0.0;
  auto add_config_options = [&](CLI::App* cmd) {
    cmd->add_option("--eps", cfgEps, "Derive R, phi, sigma from the parabolic model");
    cmd->add_option("--mu", cfgMu);
    cmd->add_option("--R", cfgR)->capture_default_str();
    cmd->add_option("--phi", cfgPhi)->capture_default_str();
    cmd->add_option("--sigma", cfgSigma)->capture_default_str();
    cmd->add_option("--theta1", theta1)->capture_default_str();
    cmd->add_option("--theta-m1", thetaM1)->capture_default_str();
  };
  auto build_config = [&](Params& p) {
    InterferometerConfig c{cfgR, cfgPhi, cfgSigma, theta1, thetaM1};
    if (cfgEps || cfgMu)
    {
      if (!cfgEps || !cfgMu)
        throw InvalidArgument("--eps and --mu must be given together");
      p.add("eps", *cfgEps);
      p.add("mu", *cfgMu);
      c = InterferometerConfig::from_parabolic({*cfgEps, *cfgMu}, {theta1, thetaM1});
    }
    c.validate();
    p.add("R", c.r);
    p.add("phi", c.phi);
    p.add("sigma", c.sigma);
    p.add("theta1", c.theta1);
    p.add("theta_m1", c.theta_m1);
    return c;
  };

  auto* itf = app.add_subcommand("interferometer", "Spin-1 interferometer output");
  add_config_options(itf);
  add_output_options(itf, output);
  itf->callback([&] {
    action = [&] {
      Params p;
      const InterferometerConfig c = build_config(p);
      const Matrix u = total_propagator(c);
      const ChiPsi cp = chi_psi(c);
      Json body{{"chi", cp.chi},
                {"psi", cp.psi},
                {"P_1_to_m1", population_1_to_m1(c)},
                {"P_1_to_m1_matrix", std::norm(u(2, 0))},
                {"output_populations",
                 numbers({std::norm(u(0, 0)), std::norm(u(1, 0)), std::norm(u(2, 0))})},
                {"unitarity_defect", unitarity_defect(u)},
                {"U_TOT", matrix_json(u)}};
      Emitter(output, out).record("interferometer", p, body);
    };
  });

  std::string sweep = "sigma";
  double from = 0.0, to = 4.0 * 3.141592653589793;
  int points = 500;
  Output scanOutput{"", Format::csv};
  auto* scan = app.add_subcommand("scan", "Fringe scan over sigma or chi");
  add_config_options(scan);
  scan->add_option("--sweep", sweep)->check(CLI::IsMember({"sigma", "chi"}))->capture_default_str();
  scan->add_option("--from", from)->capture_default_str();
  scan->add_option("--to", to)->capture_default_str();
  scan->add_option("--points", points)->capture_default_str();
  add_output_options(scan, scanOutput);
  scan->callback([&] {
    action = [&] {
      Params p;
      const InterferometerConfig c = build_config(p);
      p.add("sweep", sweep);
      p.add("from", from);
      p.add("to", to);
      p.add("points", points);
      if (points < 2)
        throw InvalidArgument("--points must be >= 2");
      const auto grid = linspace(from, to, static_cast<std::size_t>(points));
      const SweepParameter which = sweep == "sigma" ? SweepParameter::sigma : SweepParameter::chi;
      const FringeScan s = fringe_scan(c, which, grid);
      Emitter em(scanOutput, out);
      std::vector<double> sigmas(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i)
        sigmas[i] = which == SweepParameter::sigma
                      ? grid[i]
                      : 2.0 * (grid[i] - c.phi + 0.25 * (c.theta1 + c.theta_m1));
      if (em.format() == Format::csv)
      {
        auto& os = em.stream();
        os << "# spinorlz scan: " << p.line() << " visibility=" << format_number(s.visibility)
           << '\n';
        os << "sigma,chi,psi,P\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
          os << format_number(sigmas[i]) << ',' << format_number(s.chi[i]) << ','
             << format_number(s.psi[i]) << ',' << format_number(s.populations[i]) << '\n';
        em.finish();
      }
      else
      {
        Json rows = Json::array();
        for (std::size_t i = 0; i < grid.size(); ++i)
          rows.push_back(Json{{"sigma", sigmas[i]},
                              {"chi", s.chi[i]},
                              {"psi", s.psi[i]},
                              {"P", s.populations[i]}});
        Json minima = Json::array();
        for (auto i : s.minima)
          minima.push_back(sigmas[i]);
        Json maxima = Json::array();
        for (auto i : s.maxima)
          maxima.push_back(sigmas[i]);
        em.record("scan", p,
                  Json{{"visibility", s.visibility},
                       {"minima_sigma", minima},
                       {"maxima_sigma", maxima},
                       {"rows", rows}});
      }
    };
  });

  // map-fields
  double bx = 0.060, bz0 = 0.300, bdot = 5e4, gF = 0.5, margin = 5.0;
  std::string labConfig;
  auto* mf = app.add_subcommand("map-fields", "Map lab fields to model parameters");
  mf->add_option("--Bx", bx, "Coupling field [G]")->capture_default_str();
  mf->add_option("--Bz0", bz0, "Bias at t=0 [G]")->capture_default_str();
  mf->add_option("--Bdot", bdot, "Bias ramp rate at the crossings [G/s]")->capture_default_str();
  mf->add_option("--gF", gF, "Lande g-factor")->capture_default_str();
  mf->add_option("--lab-config", labConfig, "Key-value lab configuration file");
  mf->add_option("--margin", margin, "ICA margin on t_c/t_z")->capture_default_str();
  add_output_options(mf, output);
  mf->callback([&] {
    action = [&] {
      LabFields f{bx, bz0, bdot, gF};
      if (!labConfig.empty())
      {
        const LabFields file = load_lab_fields(labConfig);
        // explicit flags win over the file
        if (mf->count("--Bx") == 0)
          f.bx_gauss = file.bx_gauss;
        if (mf->count("--Bz0") == 0)
          f.bz0_gauss = file.bz0_gauss;
        if (mf->count("--Bdot") == 0)
          f.bdot_gauss_per_s = file.bdot_gauss_per_s;
        if (mf->count("--gF") == 0)
          f.g_f = file.g_f;
      }
      Params p;
      p.add("Bx", f.bx_gauss);
      p.add("Bz0", f.bz0_gauss);
      p.add("Bdot", f.bdot_gauss_per_s);
      p.add("gF", f.g_f);
      p.add("margin", margin);
      const MappedParams m = map_fields(f);
      const IcaValidation v = validate_ica(m, margin);
      Json body{{"mu", m.mu},
                {"eps", m.epsilon},
                {"eps_mu", m.eps_mu},
                {"Lambda", m.lambda},
                {"R", m.r},
                {"phi", m.phi},
                {"t_c", m.t_c},
                {"t_z", m.t_z},
                {"t_z_two_level", m.t_z_two_level},
                {"regime", to_string(m.regime)},
                {"coupling_energy_J", m.coupling_energy},
                {"time_unit_s", m.time_unit},
                {"ica", Json{{"ok", v.ok}, {"ratio", v.ratio}, {"margin", v.margin}}}};
      Emitter(output, out).record("map-fields", p, body);
    };
  });

  // report
  std::string speciesDir = std::string(SPINORLZ_DATA_DIR) + "/species";
  auto* rep = app.add_subcommand("report", "Recompute every published reference number");
  rep->add_option("--species-dir", speciesDir)->capture_default_str();
  add_output_options(rep, output);
  int reportStatus = kOk;
  rep->callback([&] {
    action = [&] {
      const auto lines = reproduction_report(speciesDir);
      Json rows = Json::array();
      bool all = true;
      for (const auto& l : lines)
      {
        rows.push_back(Json{{"check", l.name},
                            {"computed", l.computed},
                            {"expected", l.expected},
                            {"tolerance", l.tolerance},
                            {"pass", l.pass}});
        all = all && l.pass;
      }
      Params p;
      p.add("species_dir", speciesDir);
      Emitter em(output, out);
      if (em.format() == Format::csv)
      {
        auto& os = em.stream();
        os << "# spinorlz report: " << p.line() << '\n';
        os << "check,computed,expected,tolerance,pass\n";
        for (const auto& l : lines)
          os << '"' << l.name << "\"," << format_number(l.computed) << ','
             << format_number(l.expected) << ",\"" << l.tolerance << "\","
             << (l.pass ? "pass" : "FAIL") << '\n';
        em.finish();
      }
      else
      {
        em.record("report", p, Json{{"all_pass", all}, {"checks", rows}});
      }
      if (!all)
        reportStatus = kNumericalFailure;
    };
  });

  auto error_record = [&](const char* kind, const std::string& message, int code) {
    err << Json{{"error", Json{{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump()
        << '\n';
    return code;
  };

  try
  {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  }
  catch (const CLI::CallForHelp&)
  {
    out << app.help();
    return kOk;
  }
  catch (const CLI::CallForAllHelp&)
  {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  }
  catch (const CLI::FileError& e)
  {
    return error_record("io", e.what(), kIoFailure);
  }
  catch (const CLI::ParseError& e)
  {
    return error_record("invalid_parameters", e.what(), kInvalidParameters);
  }

  try
  {
    if (action)
      action();
    return reportStatus;
  }
  catch (const InvalidArgument& e)
  {
    return error_record("invalid_parameters", e.what(), kInvalidParameters);
  }
  catch (const IoError& e)
  {
    return error_record("io", e.what(), kIoFailure);
  }
  catch (const NumericalError& e)
  {
    return error_record("numerical", e.what(), kNumericalFailure);
  }
  catch (const std::exception& e)
  {
    return error_record("numerical", e.what(), kNumericalFailure);
  }
}

} // namespace spinorlz::cli
