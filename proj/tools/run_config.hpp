#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twr/spectrum.hpp"
#include "twr/twists.hpp"
#include "twr/verify.hpp"

namespace twr::cli {

enum class Format { Csv, Json, Text };

std::string to_string(Format f);
/// "csv", "json" or "text"; throws ConfigError otherwise.
Format format_from_string(const std::string& s);

// Everything a run needs, fully parsed and validated before any computation.
//
//   [run]         seed, chart, acceleration
//   [twist]       kind and the twist parameters (see parse_twist_block)
//   [spectrum]    a, omega_hat, z, theta01, omegas | grid, methods,
//                 eps0, levels, panels, rel_tol
//   [output]      dir, formats
//   [tolerances]  symbolic, gamma, planck, quadrature, deformed_closed,
//                 deformed_fd, geometry
//
// Comments are whole lines starting with ';' or '#'. Unknown sections and
// keys, duplicate keys and unparsable values are errors.
struct RunConfig {
  std::uint64_t seed = 1;
  std::string chart = "minkowski";
  std::string acceleration = "a";
  std::optional<TwistSpec> twist;
  SpectrumRequest spectrum;
  std::string out_dir = ".";
  std::vector<Format> formats;  // empty: the command's defaults
  Tolerances tolerances;

  Chart make_chart() const;
  VerifyOptions verify_options() const;
};

/// Parses INI text. Throws ConfigError for malformed input and
/// std::invalid_argument for well-formed but inconsistent parameters.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// `omegas = 0.5, 1, 2` or `grid = start, stop, count` (linear, inclusive).
std::vector<double> parse_omega_list(const std::string& value);
std::vector<double> parse_omega_grid(const std::string& value);

}  // namespace twr::cli
