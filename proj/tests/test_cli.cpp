#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using spinorlz::cli::run;
using Json = nlohmann::json;

namespace {

struct Result
{
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args)
{
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text)
{
  std::vector<std::string> v;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    v.push_back(line);
  return v;
}

std::filesystem::path scratch(const std::string& name)
{
  const auto dir = std::filesystem::temp_directory_path() / "spinorlz_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double csv_value(const std::string& text, const std::string& key)
{
  for (const auto& l : lines(text))
    if (l.rfind(key + ",", 0) == 0)
      return std::stod(l.substr(key.size() + 1));
  FAIL("key not found: " << key);
  return 0.0;
}

} // namespace

TEST_CASE("map-fields reproduces the reference setup")
{
  const Result r = invoke({"map-fields", "--Bx", "0.060", "--Bz0", "0.300", "--Bdot", "5e4", "--gF", "0.5"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["command"] == "map-fields");
  CHECK(j["mu"].get<double>() == 5.0);
  CHECK(j["eps"].get<double>() == doctest::Approx(2.0).epsilon(0.05));
  CHECK(j["t_c"].get<double>() == doctest::Approx(24e-6).epsilon(1e-12));
  CHECK(j["R"].get<double>() == doctest::Approx(0.78).epsilon(0.01));
  CHECK(j["ica"]["ok"].get<bool>());
  CHECK(j["config"]["Bx"] == "0.059999999999999998");
}

TEST_CASE("map-fields reads a lab file, flags take precedence")
{
  const std::string lab = std::string(SPINORLZ_DATA_DIR) + "/lab/reference_setup.cfg";
  const Result a = invoke({"map-fields", "--lab-config", lab, "--format", "csv"});
  REQUIRE(a.code == 0);
  CHECK(csv_value(a.out, "mu") == 5.0);
  const Result b = invoke({"map-fields", "--lab-config", lab, "--Bz0", "0.6", "--format", "csv"});
  REQUIRE(b.code == 0);
  CHECK(csv_value(b.out, "mu") == doctest::Approx(10.0));
}

TEST_CASE("config file with command-line override")
{
  const auto cfg = scratch("run.ini");
  {
    std::ofstream f(cfg);
    f << "[map-fields]\nBx = 0.12\nBz0 = 0.6\n";
  }
  const Result a = invoke({"--config", cfg.string(), "map-fields", "--format", "csv"});
  REQUIRE(a.code == 0);
  CHECK(csv_value(a.out, "mu") == doctest::Approx(5.0));
  CHECK(lines(a.out)[0].find("Bx=0.12") != std::string::npos);
  const Result b = invoke({"--config", cfg.string(), "map-fields", "--Bx", "0.06", "--format", "csv"});
  REQUIRE(b.code == 0);
  CHECK(csv_value(b.out, "mu") == doctest::Approx(10.0));
}

TEST_CASE("scan emits a deterministic CSV")
{
  const std::vector<std::string> args{"scan", "--eps", "2", "--mu", "5", "--sweep", "sigma",
                                      "--from", "0", "--to", "12.57", "--points", "500"};
  const Result a = invoke(args);
  REQUIRE(a.code == 0);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 502);
  CHECK(rows[0].rfind("# spinorlz scan: ", 0) == 0);
  CHECK(rows[0].find("eps=2") != std::string::npos);
  CHECK(rows[0].find("points=500") != std::string::npos);
  CHECK(rows[1] == "sigma,chi,psi,P");
  for (std::size_t i = 2; i < rows.size(); ++i)
  {
    double v[4];
    std::istringstream in(rows[i]);
    std::string cell;
    for (double& x : v)
    {
      std::getline(in, cell, ',');
      x = std::stod(cell);
    }
    CHECK(v[3] >= 0.0);
    CHECK(v[3] <= 1.0);
  }
  const Result b = invoke(args);
  CHECK(a.out == b.out);

  auto withFile = args;
  const auto path = scratch("scan.csv");
  withFile.insert(withFile.end(), {"--output", path.string()});
  const Result c = invoke(withFile);
  REQUIRE(c.code == 0);
  CHECK(c.out.empty());
  CHECK(slurp(path) == a.out);
}

TEST_CASE("chi sweep and JSON scan")
{
  const Result r = invoke({"scan", "--sweep", "chi", "--from", "0", "--to", "3.14159", "--points", "101",
                           "--format", "json"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["rows"].size() == 101);
  CHECK(j["visibility"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("oracle comparison record")
{
  const Result r = invoke({"oracle", "--model", "parabolic", "--levels", "3", "--eps", "2", "--mu", "5"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.contains("abs_error"));
  CHECK(j["abs_error"].get<double>() < 0.02);
  CHECK(j["populations"].size() == 3);
  CHECK(j["norm_drift"].get<double>() < 1e-9);
}

TEST_CASE("propagator commands")
{
  SUBCASE("lz")
  {
    const Result r = invoke({"lz", "--lambda", "1", "--levels", "3"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["R"].get<double>() == doctest::Approx(std::exp(-std::numbers::pi / 2.0)));
    CHECK(j["matrix"].size() == 3);
    CHECK(j["unitarity_defect"].get<double>() < 1e-12);
  }
  SUBCASE("parabolic")
  {
    const Result r = invoke({"parabolic", "--eps", "2", "--mu", "5", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(csv_value(r.out, "sigma") == doctest::Approx(22.382955786689666).epsilon(1e-12));
    CHECK(csv_value(r.out, "P_1_to_3") ==
          doctest::Approx(csv_value(r.out, "P_1_to_2") * csv_value(r.out, "P_1_to_2")));
  }
  SUBCASE("parabolic warns outside the ICA regime")
  {
    const Result r = invoke({"parabolic", "--eps", "10", "--mu", "0.1"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["warnings"].size() == 1);
  }
  SUBCASE("lift")
  {
    const Result r = invoke({"lift", "--alpha-re", "0.6", "--beta-im", "0.8", "--levels", "4"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["matrix"].size() == 4);
    CHECK(invoke({"lift", "--alpha-re", "0.6", "--levels", "3"}).code == 2);
  }
  SUBCASE("interferometer")
  {
    const Result r = invoke({"interferometer", "--theta1", "1.5707963267948966", "--sigma", "1.5707963267948966",
                             "--theta-m1", "-1.5707963267948966"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["P_1_to_m1"].get<double>() == doctest::Approx(0.25));
    CHECK(j["P_1_to_m1_matrix"].get<double>() == doctest::Approx(0.25));
  }
  SUBCASE("gp")
  {
    const Result r = invoke({"gp", "--species", "rb87", "--zeta", "0.6,0.5,0.3", "--duration", "1e-4"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["gamma"].get<double>() == doctest::Approx(90.0).epsilon(0.1));
    CHECK(j["max_norm_drift"].get<double>() < 1e-9);
    CHECK(std::abs(j["theta1"].get<double>()) > 0.0);
    const Result na = invoke({"gp", "--species", "na23", "--zeta", "1,0;0,1;1,0", "--duration", "1e-5"});
    CHECK(na.code == 0);
  }
}

TEST_CASE("report lists every reference number")
{
  const Result r = invoke({"report"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["all_pass"].get<bool>());
  bool gamma = false;
  bool amplitude = false;
  for (const auto& c : j["checks"])
  {
    const std::string name = c["check"];
    gamma = gamma || name.find("gamma [1/s]") != std::string::npos;
    amplitude = amplitude || name == "field mapping: R";
    CHECK(c["pass"].get<bool>());
  }
  CHECK(gamma);
  CHECK(amplitude);
}

TEST_CASE("exit codes and error records")
{
  SUBCASE("invalid parameters")
  {
    for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"lz", "--lambda", "-1"},
           {"lz"},
           {"scan", "--points", "1"},
           {"scan", "--sweep", "theta"},
           {"parabolic", "--mu", "-2"},
           {"oracle", "--rtol", "1e-13"},
           {"gp", "--species", "unobtainium"},
           {"gp", "--zeta", "1,2"},
           {"map-fields", "--margin", "1"},
           {"nonsense"}})
    {
      const Result r = invoke(args);
      CHECK(r.code == 2);
      const Json e = Json::parse(r.err);
      CHECK(e["error"]["exit_code"] == 2);
      CHECK(e["error"]["kind"] == "invalid_parameters");
      CHECK(r.out.empty());
    }
  }
  SUBCASE("numerical failure")
  {
    const Result r = invoke({"oracle", "--max-steps", "10"});
    CHECK(r.code == 3);
    CHECK(Json::parse(r.err)["error"]["kind"] == "numerical");
  }
  SUBCASE("I/O failure")
  {
    CHECK(invoke({"map-fields", "--output", "/nonexistent/dir/out.json"}).code == 4);
    CHECK(invoke({"map-fields", "--lab-config", "/nonexistent/lab.cfg"}).code == 4);
    CHECK(invoke({"--config", "/nonexistent/run.ini", "lz", "--lambda", "1"}).code == 4);
    CHECK(invoke({"gp", "--species", "/nonexistent/species.cfg"}).code == 2);
  }
  SUBCASE("help")
  {
    const Result r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("scan") != std::string::npos);
  }
}

TEST_CASE("format_number round-trips")
{
  for (double x : {0.1, 1.0 / 3.0, 22.382955786689666, 2.4e-5, -7.0, 1e300})
  {
    const std::string s = spinorlz::cli::format_number(x);
    double y = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), y);
    CHECK(y == x);
  }
  CHECK(spinorlz::cli::format_number(5.0) == "5");
}
