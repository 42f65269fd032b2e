#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twr/spectrum.hpp"

namespace twr {

/// Tolerances used by the invariant suites; each can be overridden from a config.
struct Tolerances {
  double symbolic = 1e-12;        // randomized probe of symbolic identities
  double gamma = 1e-12;           // |Gamma(i y)|^2 identity, relative
  double planck = 1e-10;          // omega |f(-omega)|^2 against the Planck form, relative
  double quadrature = 1e-6;       // quadrature oracle against closed forms, relative
  double deformed_closed = 1e-6;  // deformed spectrum shift, relative
  double deformed_fd = 1e-4;      // finite-difference theta derivative, relative
  double geometry = 1e-12;        // coordinate round trip
};

struct CheckResult {
  std::string name;       // "<suite>.<invariant>"
  bool passed = false;
  double measured = 0.0;  // worst residual, or number of structural failures
  double tolerance = 0.0;
  std::string detail;     // first failure, empty when passed
};

struct VerifyReport {
  std::uint64_t seed = 0;
  Tolerances tolerances;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Deterministic for a fixed seed and tolerance set; carries no timestamps.
  std::string to_json() const;
  std::string to_text() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  Tolerances tol{};
  QuadratureOptions quad{};
};

/// Runs every invariant suite (expr, diffop, twists, starprod, spectrum, rindler).
VerifyReport run_verify(const VerifyOptions& opts = {});

}  // namespace twr
