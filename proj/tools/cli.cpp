#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "run_config.hpp"
#include "twr/starprod.hpp"
#include "twr/verify.hpp"

namespace twr::cli {

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
};

struct Artifact {
  std::string file;
  std::string content;
};

// An error raised after the config was accepted but before anything was written.
struct Inconsistent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.close();
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path);
}

// Writes every artifact plus a metadata sidecar. Everything is rendered
// before this is called, so a failed computation leaves no files behind.
void emit(const std::string& command, const RunConfig& cfg, const Flags& flags, const std::vector<Artifact>& artifacts) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  nlohmann::ordered_json meta;
  meta["command"] = command;
  meta["generated_at"] = utc_now();
  meta["seed"] = cfg.seed;
  meta["config"] = flags.config.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(flags.config);
  meta["outputs"] = nlohmann::ordered_json::array();
  for (const auto& a : artifacts) {
    write_atomic(dir / a.file, a.content);
    meta["outputs"].push_back(a.file);
  }
  write_atomic(dir / (command + ".meta.json"), meta.dump(2) + "\n");
}

std::vector<Format> formats_or(const RunConfig& cfg, std::vector<Format> defaults) {
  return cfg.formats.empty() ? defaults : cfg.formats;
}

// ---- commutator ---------------------------------------------------------

int cmd_commutator(const RunConfig& cfg, const Flags& flags, std::ostream& out) {
  if (!cfg.twist) throw ConfigError("config has no [twist] section");
  const CommutatorTable table = [&] {
    try {
      return build_table(build_twist(*cfg.twist, cfg.make_chart()));
    } catch (const std::invalid_argument& e) {
      throw Inconsistent(e.what());
    }
  }();
  std::vector<Artifact> files;
  for (Format f : formats_or(cfg, {Format::Json, Format::Text})) {
    if (f == Format::Json) files.push_back({"commutator.json", table.to_json()});
    if (f == Format::Text) files.push_back({"commutator.txt", table.to_text()});
    if (f == Format::Csv) {
      std::string csv = "mu,nu,value\n";
      for (const auto& [key, v] : table.entries) {
        csv += std::to_string(key.first) + "," + std::to_string(key.second) + "," + csv_quote(v.str()) + "\n";
      }
      files.push_back({"commutator.csv", csv});
    }
  }
  emit("commutator", cfg, flags, files);
  out << table.to_text();
  return kOk;
}

// ---- spectrum -----------------------------------------------------------

std::string spectrum_text(const SpectrumResult& r) {
  std::ostringstream s;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-12s %-24s %-24s %s\n", "method", "omega", "power", "power_deformed",
                "converged");
  s << line;
  for (const auto& row : r.rows) {
    std::snprintf(line, sizeof line, "%-12s %-12.6g %-24.17g %-24.17g %s\n", to_string(row.method).c_str(), row.omega,
                  row.power, row.power_deformed, row.converged ? "yes" : "NO");
    s << line;
  }
  return s.str();
}

int cmd_spectrum(const RunConfig& cfg, const Flags& flags, std::ostream& out, std::ostream& err) {
  if (cfg.spectrum.omegas.empty()) throw ConfigError("empty frequency grid: set 'omegas' or 'grid' in [spectrum]");
  if (cfg.twist && cfg.twist->kind() != TwistKind::Canonical) {
    throw Inconsistent("the spectral correction is only available for the canonical twist; [twist] is " +
                       to_string(cfg.twist->kind()));
  }
  SpectrumResult result;
  try {
    result = compute_spectrum(cfg.spectrum);
  } catch (const std::invalid_argument& e) {
    throw Inconsistent(e.what());
  }
  nlohmann::ordered_json meta{{"command", "spectrum"}, {"seed", cfg.seed}};
  std::vector<Artifact> files;
  for (Format f : formats_or(cfg, {Format::Csv, Format::Json})) {
    if (f == Format::Csv) files.push_back({"spectrum.csv", result.to_csv()});
    if (f == Format::Json) files.push_back({"spectrum.json", result.to_json(meta.dump())});
    if (f == Format::Text) files.push_back({"spectrum.txt", spectrum_text(result)});
  }
  emit("spectrum", cfg, flags, files);
  out << spectrum_text(result);
  if (!result.all_converged()) {
    err << "quadrature did not converge on every grid point; affected rows are flagged\n";
    return kNotConverged;
  }
  return kOk;
}

// ---- verify -------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, const Flags& flags, std::ostream& out, std::ostream& err) {
  const VerifyReport report = run_verify(cfg.verify_options());
  std::vector<Artifact> files;
  for (Format f : formats_or(cfg, {Format::Json, Format::Text})) {
    if (f == Format::Json) files.push_back({"verify.json", report.to_json()});
    if (f == Format::Text) files.push_back({"verify.txt", report.to_text()});
    if (f == Format::Csv) {
      std::ostringstream csv;
      csv << std::setprecision(17) << "name,passed,measured,tolerance\n";
      for (const auto& c : report.checks) {
        csv << c.name << ',' << (c.passed ? 1 : 0) << ',' << c.measured << ',' << c.tolerance << '\n';
      }
      files.push_back({"verify.csv", csv.str()});
    }
  }
  emit("verify", cfg, flags, files);
  out << report.to_text();
  if (report.passed()) return kOk;
  for (const auto& c : report.checks) {
    if (!c.passed) err << "failed invariant: " << c.name << "\n";
  }
  return kVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted Rindler space-time engine: star commutators, Unruh spectra, invariant checks", "twr"};
  app.require_subcommand(1);
  Flags flags;
  std::uint64_t seed = 0;
  std::vector<CLI::App*> subs;
  const std::pair<const char*, const char*> commands[] = {
      {"commutator", "Build the twist from [twist] and write the coordinate commutator table"},
      {"spectrum", "Compute the commutative and deformed spectra on the [spectrum] grid"},
      {"verify", "Run every invariant suite and write a pass/fail report"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "INI config file")->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "Output directory (overrides [output] dir)");
    sub->add_option("--format", flags.format, "Single output format (overrides [output] formats)")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--seed", seed, "Random seed (overrides [run] seed)");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  for (auto* sub : subs) {
    if (sub->count("--seed")) flags.seed = seed;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    if (!flags.config.empty()) cfg = load_run_config(flags.config);
    if (!flags.out.empty()) cfg.out_dir = flags.out;
    if (!flags.format.empty()) cfg.formats = {format_from_string(flags.format)};
    if (flags.seed) cfg.seed = *flags.seed;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kInconsistent;
  }

  try {
    if (command == "commutator") return cmd_commutator(cfg, flags, out);
    if (command == "spectrum") return cmd_spectrum(cfg, flags, out, err);
    return cmd_verify(cfg, flags, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Inconsistent& e) {
    err << "inconsistent configuration: " << e.what() << "\n";
    return kInconsistent;
  }
}

}  // namespace twr::cli
