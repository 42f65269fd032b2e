#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "run_config.hpp"

using namespace twr;
using namespace twr::cli;
namespace fs = std::filesystem;

namespace {

const double pi = 3.14159265358979323846;

// Fresh scratch directory per test case, removed on exit.
struct Scratch {
  fs::path dir;
  Scratch() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("twr_cli_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }

  std::string config(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string out(const std::string& name = "out") const { return (dir / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "twr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> listing(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

const char* canonical_cfg = R"(
; canonical twist, flat chart
[run]
chart = minkowski

[twist]
kind = canonical
theta01 = 1/2
theta03 = -3
theta12 = t
theta23 = 7/4
)";

const char* lie_rindler_cfg = R"(
[run]
chart = rindler

[twist]
kind = lie
inv_kappa = 1/kappa
zeta = 0, 1, 0, 0
alpha = 0
beta = 2
)";

}  // namespace

TEST_CASE("config: sections, comments, lists and grids", "[cli][config]") {
  const RunConfig c = parse_run_config(R"(
# comment
[run]
seed = 42
chart = rindler
acceleration = b
[spectrum]
a = 2
theta01 = -1e-3
grid = 1, 2, 3
methods = quadrature
panels = 64
[output]
dir = somewhere
formats = csv, text
[tolerances]
quadrature = 1e-20
)");
  CHECK(c.seed == 42);
  CHECK(c.make_chart() == Chart::rindler("b"));
  CHECK(c.spectrum.a == 2.0);
  CHECK(c.spectrum.theta01 == -1e-3);
  CHECK(c.spectrum.omegas == std::vector<double>{1.0, 1.5, 2.0});
  CHECK_FALSE(c.spectrum.closed_form);
  CHECK(c.spectrum.quadrature);
  CHECK(c.spectrum.quad.panels == 64);
  CHECK(c.out_dir == "somewhere");
  CHECK(c.formats == std::vector<Format>{Format::Csv, Format::Text});
  CHECK(c.tolerances.quadrature == 1e-20);
  CHECK(c.verify_options().seed == 42);
  CHECK_FALSE(c.twist.has_value());

  CHECK(parse_omega_list("0.5, 1,2") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(parse_omega_list("").empty());
  CHECK(parse_omega_grid("1, 5, 0").empty());
  CHECK(parse_omega_grid("3, 9, 1") == std::vector<double>{3.0});
}

TEST_CASE("config: malformed input is a ConfigError", "[cli][config]") {
  const char* bad[] = {
      "[run]\nsede = 1\n",                                // unknown key
      "[runs]\nseed = 1\n",                               // unknown section
      "[run]\nseed = 1\nseed = 2\n",                      // duplicate key
      "seed = 1\n",                                       // key outside a section
      "[run]\nseed = -1\n",                               // not an unsigned integer
      "[run]\nchart = polar\n",                           // unknown chart
      "[spectrum]\na = two\n",                            // not a number
      "[spectrum]\nomegas = 1\ngrid = 1, 2, 3\n",         // both grids
      "[spectrum]\ngrid = 1, 2\n",                        // short grid
      "[spectrum]\nmethods = closed-form, monte-carlo\n", // unknown method
      "[output]\nformats = csv, xml\n",                   // unknown format
      "[twist]\nkind = canonical\ntheta04 = 1\n",         // unknown twist key
      "[twist]\nkind = lie\ninv_kappa = 1\nalpha = 0\nbeta = 1\n",  // missing zeta
      "[run\nseed = 1\n",                                 // broken header
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(parse_run_config(text), ConfigError);
  }
}

TEST_CASE("config: well-formed but invalid parameters are not ConfigErrors", "[cli][config]") {
  const char* invalid[] = {
      "[spectrum]\na = -1\n",
      "[spectrum]\nlevels = 0\n",
      "[tolerances]\ngamma = -1e-3\n",
      "[twist]\nkind = lie\ninv_kappa = 1\nzeta = 1, 0, 0, 0\nalpha = 0\nbeta = 1\n",
      "[twist]\nkind = quadratic\nxi = 1\nalpha = 0\nbeta = 1\ngamma = 1\ndelta = 3\n",
  };
  for (const char* text : invalid) {
    INFO(text);
    try {
      parse_run_config(text);
      FAIL("accepted");
    } catch (const ConfigError&) {
      FAIL("reported as malformed");
    } catch (const std::invalid_argument&) {
      SUCCEED();
    }
  }
}

TEST_CASE("cli: canonical Minkowski table", "[cli][commutator]") {
  Scratch s;
  const Run r = run({"commutator", "--config", s.config("c.ini", canonical_cfg), "--out", s.out()});
  REQUIRE(r.code == kOk);
  CHECK(listing(s.out()) == std::vector<std::string>{"commutator.json", "commutator.meta.json", "commutator.txt"});
  const auto j = nlohmann::json::parse(slurp(fs::path(s.out()) / "commutator.json"));
  REQUIRE(j["entries"].size() == 6);
  std::map<std::string, std::string> values;
  for (const auto& e : j["entries"]) values[e["lhs"].get<std::string>()] = e["value"].get<std::string>();
  CHECK(parse_expr(values["[x0, x1]"]) == parse_expr("i/2"));
  CHECK(parse_expr(values["[x0, x2]"]) == Expr{0});
  CHECK(parse_expr(values["[x0, x3]"]) == parse_expr("-3*i"));
  CHECK(parse_expr(values["[x1, x2]"]) == parse_expr("i*t"));
  CHECK(parse_expr(values["[x1, x3]"]) == Expr{0});
  CHECK(parse_expr(values["[x2, x3]"]) == parse_expr("7*i/4"));
  CHECK(r.out == slurp(fs::path(s.out()) / "commutator.txt"));

  const auto meta = nlohmann::json::parse(slurp(fs::path(s.out()) / "commutator.meta.json"));
  CHECK(meta["command"] == "commutator");
  CHECK(meta.contains("generated_at"));
}

TEST_CASE("cli: Lie Rindler table carries the hyperbolic chart factors", "[cli][commutator]") {
  Scratch s;
  const Run r = run({"commutator", "--config", s.config("l.ini", lie_rindler_cfg), "--out", s.out(), "--format", "json"});
  REQUIRE(r.code == kOk);
  const std::string json = slurp(fs::path(s.out()) / "commutator.json");
  CHECK(json.find("sinh(a*z0)") != std::string::npos);
  CHECK(json.find("cosh(a*z0)") != std::string::npos);
  // [z0, z1] picks up the 1/(a z1) of the pulled-back generators.
  const Expr z01 = parse_expr(nlohmann::json::parse(json)["entries"][0]["value"].get<std::string>());
  CHECK(simplify(z01 * sym("a") * sym("z1")) == parse_expr("i*z2/kappa"));
  CHECK_FALSE(fs::exists(fs::path(s.out()) / "commutator.txt"));
}

TEST_CASE("cli: malformed configs exit 2 and write nothing", "[cli][errors]") {
  Scratch s;
  const std::string cases[] = {
      "[twist]\nkind = canonical\ntheta01 = 1\nbogus = 2\n",
      "[twist]\nkind = wobbly\n",
      "[run]\nseed = 1\nseed = 1\n[twist]\nkind = canonical\n",
  };
  for (const auto& text : cases) {
    for (const char* cmd : {"commutator", "spectrum", "verify"}) {
      INFO(cmd << "\n" << text);
      const Run r = run({cmd, "--config", s.config("bad.ini", text), "--out", s.out()});
      CHECK(r.code == kConfigError);
      CHECK(r.err.find("config error") != std::string::npos);
      CHECK_FALSE(fs::exists(s.out()));
    }
  }
  // commutator without a twist block
  CHECK(run({"commutator", "--config", s.config("empty.ini", "[run]\nseed = 3\n"), "--out", s.out()}).code ==
        kConfigError);
  CHECK(run({"commutator", "--config", (s.dir / "missing.ini").string()}).code == kConfigError);
  CHECK(run({"commutator", "--format", "xml"}).code == kConfigError);
  CHECK(run({"transmogrify"}).code == kConfigError);
  CHECK(run({}).code == kConfigError);
  CHECK(run({"--help"}).code == kOk);
  CHECK_FALSE(fs::exists(s.out()));
}

TEST_CASE("cli: inconsistent specs exit 3 and write nothing", "[cli][errors]") {
  Scratch s;
  const std::string cases[] = {
      "[twist]\nkind = lie\ninv_kappa = 1\nzeta = 0, 1, 0, 0\nalpha = 1\nbeta = 2\n",
      "[run]\nchart = rindler\nacceleration = x1\n[twist]\nkind = canonical\ntheta01 = 1\n",
      "[twist]\nkind = canonical\ntheta01 = z1\n",
  };
  for (const auto& text : cases) {
    INFO(text);
    const Run r = run({"commutator", "--config", s.config("c.ini", text), "--out", s.out()});
    CHECK(r.code == kInconsistent);
    CHECK_FALSE(fs::exists(s.out()));
  }
  const Run r = run({"spectrum", "--config",
                     s.config("q.ini", "[twist]\nkind = quadratic\nxi = 1\nalpha = 0\nbeta = 1\ngamma = 2\ndelta = 3\n"
                                       "[spectrum]\nomegas = 1\n"),
                     "--out", s.out()});
  CHECK(r.code == kInconsistent);
  CHECK_FALSE(fs::exists(s.out()));
}

TEST_CASE("cli: spectrum at T = 1 reproduces the Planck form and the deformation", "[cli][spectrum]") {
  Scratch s;
  const std::string cfg = s.config("s.ini", R"(
[spectrum]
a = 6.283185307179586
omega_hat = 1
z = 1
theta01 = 1e-4
omegas = 0.5, 1, 1.5, 2, 3
)");
  const Run r = run({"spectrum", "--config", cfg, "--out", s.out()});
  REQUIRE(r.code == kOk);
  CHECK(listing(s.out()) == std::vector<std::string>{"spectrum.csv", "spectrum.json", "spectrum.meta.json"});
  const auto j = nlohmann::json::parse(slurp(fs::path(s.out()) / "spectrum.json"));
  REQUIRE(j["rows"].size() == 5);
  for (const auto& row : j["rows"]) {
    const double w = row["omega"];
    const double planck = 1.0 / std::expm1(w);
    CHECK(std::abs(row["power"].get<double>() - planck) / planck <= 1e-10);
    const double shift = (row["power_deformed"].get<double>() - planck) / planck;
    const double expected = -2.0 * 1e-4 * w / pi;  // T = 1, z = 1
    CHECK(std::abs(shift - expected) / std::abs(expected) <= 1e-6);
  }
  CHECK(j["all_converged"] == true);

  // Same config, same bytes.
  const Run again = run({"spectrum", "--config", cfg, "--out", s.out("again")});
  CHECK(slurp(fs::path(s.out()) / "spectrum.json") == slurp(fs::path(s.out("again")) / "spectrum.json"));
  CHECK(slurp(fs::path(s.out()) / "spectrum.csv") == slurp(fs::path(s.out("again")) / "spectrum.csv"));
}

TEST_CASE("cli: empty grid exits 2, bad grid values exit 3", "[cli][spectrum]") {
  Scratch s;
  for (const char* text : {"[spectrum]\na = 1\n", "[spectrum]\nomegas =\n", "[spectrum]\ngrid = 1, 2, 0\n"}) {
    INFO(text);
    CHECK(run({"spectrum", "--config", s.config("e.ini", text), "--out", s.out()}).code == kConfigError);
  }
  CHECK(run({"spectrum"}).code == kConfigError);
  CHECK(run({"spectrum", "--config", s.config("n.ini", "[spectrum]\nomegas = 1, -2\n"), "--out", s.out()}).code ==
        kInconsistent);
  CHECK_FALSE(fs::exists(s.out()));
}

TEST_CASE("cli: non-converged quadrature exits 4 with flagged rows", "[cli][spectrum]") {
  Scratch s;
  const std::string cfg = s.config("q.ini", R"(
[spectrum]
omegas = 1
methods = closed-form, quadrature
levels = 2
panels = 1
)");
  const Run r = run({"spectrum", "--config", cfg, "--out", s.out()});
  CHECK(r.code == kNotConverged);
  CHECK(r.err.find("converge") != std::string::npos);
  const std::string csv = slurp(fs::path(s.out()) / "spectrum.csv");
  CHECK(csv.find(",closed-form,0,1\n") != std::string::npos);
  CHECK(csv.find(",quadrature,") != std::string::npos);
  CHECK(csv.substr(csv.size() - 3) == ",0\n");
  const auto j = nlohmann::json::parse(slurp(fs::path(s.out()) / "spectrum.json"));
  CHECK(j["all_converged"] == false);
  CHECK(j["rows"][1]["converged"] == false);
}

TEST_CASE("cli: verify passes by default and fails by name on an unattainable tolerance", "[cli][verify]") {
  Scratch s;
  const Run ok = run({"verify", "--out", s.out()});
  REQUIRE(ok.code == kOk);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  const auto j = nlohmann::json::parse(slurp(fs::path(s.out()) / "verify.json"));
  CHECK(j["passed"] == true);
  CHECK(j["seed"] == 1);

  const Run bad =
      run({"verify", "--config", s.config("t.ini", "[tolerances]\nquadrature = 1e-20\n"), "--out", s.out("bad")});
  CHECK(bad.code == kVerifyFailed);
  CHECK(bad.err.find("failed invariant: spectrum.oracle_agreement") != std::string::npos);
  const auto jb = nlohmann::json::parse(slurp(fs::path(s.out("bad")) / "verify.json"));
  CHECK(jb["passed"] == false);
  bool named = false;
  for (const auto& c : jb["checks"]) {
    if (c["name"] == "spectrum.oracle_agreement") {
      named = true;
      CHECK(c["passed"] == false);
      CHECK(c["tolerance"] == 1e-20);
      CHECK(c.contains("detail"));
    } else {
      CHECK(c["passed"] == true);
    }
  }
  CHECK(named);
}

TEST_CASE("cli: verify outcome is independent of the seed", "[cli][verify]") {
  Scratch s;
  const Run one = run({"verify", "--seed", "1", "--out", s.out("one"), "--format", "json"});
  const Run two = run({"verify", "--seed", "2", "--out", s.out("two"), "--format", "json"});
  CHECK(one.code == kOk);
  CHECK(two.code == kOk);
  const auto j1 = nlohmann::json::parse(slurp(fs::path(s.out("one")) / "verify.json"));
  const auto j2 = nlohmann::json::parse(slurp(fs::path(s.out("two")) / "verify.json"));
  CHECK(j2["seed"] == 2);
  REQUIRE(j1["checks"].size() == j2["checks"].size());
  for (std::size_t k = 0; k < j1["checks"].size(); ++k) {
    CHECK(j1["checks"][k]["name"] == j2["checks"][k]["name"]);
    CHECK(j1["checks"][k]["passed"] == j2["checks"][k]["passed"]);
  }
}

TEST_CASE("cli: flags override file values", "[cli]") {
  Scratch s;
  const std::string cfg = s.config("o.ini", std::string(canonical_cfg) + "[output]\ndir = " + s.out("from_file") +
                                                "\nformats = json, text\n[run]\nseed = 9\n");
  // duplicate [run] section is rejected by the parser, so use a config without it
  CHECK(run({"commutator", "--config", cfg}).code == kConfigError);

  const std::string cfg2 = s.config("o2.ini", std::string(canonical_cfg) + "[output]\ndir = " + s.out("from_file") +
                                                 "\nformats = json, text\n");
  REQUIRE(run({"commutator", "--config", cfg2}).code == kOk);
  CHECK(fs::exists(fs::path(s.out("from_file")) / "commutator.txt"));
  REQUIRE(run({"commutator", "--config", cfg2, "--out", s.out("from_flag"), "--format", "csv"}).code == kOk);
  CHECK(listing(s.out("from_flag")) == std::vector<std::string>{"commutator.csv", "commutator.meta.json"});
  const std::string csv = slurp(fs::path(s.out("from_flag")) / "commutator.csv");
  CHECK(csv.rfind("mu,nu,value\n0,1,\"i/2\"\n", 0) == 0);

  const std::string vcfg = s.config("v.ini", "[run]\nseed = 9\n[output]\nformats = json\n");
  REQUIRE(run({"verify", "--config", vcfg, "--seed", "5", "--out", s.out("v")}).code == kOk);
  CHECK(nlohmann::json::parse(slurp(fs::path(s.out("v")) / "verify.json"))["seed"] == 5);
  const auto meta = nlohmann::json::parse(slurp(fs::path(s.out("v")) / "verify.meta.json"));
  CHECK(meta["seed"] == 5);
  CHECK(meta["config"] == vcfg);
}

TEST_CASE("cli: no temporary files are left behind", "[cli]") {
  Scratch s;
  REQUIRE(run({"commutator", "--config", s.config("c.ini", canonical_cfg), "--out", s.out()}).code == kOk);
  for (const auto& name : listing(s.out())) CHECK(name.find(".tmp") == std::string::npos);
}
