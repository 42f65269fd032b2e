#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "twr/expr.hpp"

namespace twr {

/// Sampling box for randomized numeric comparisons.
///
/// Coordinate symbols (x0..x3, z0..z3, tau, z, t) are drawn from
/// [coord_lo, coord_hi]; every other symbol is treated as a parameter and
/// drawn from [param_lo, param_hi]. The default box keeps z1 > 0 so the right
/// Rindler wedge is sampled and 1/z1 stays finite.
struct SampleBox {
  double coord_lo = 0.5;
  double coord_hi = 2.0;
  double param_lo = 0.01;
  double param_hi = 1.0;
};

bool is_coordinate_symbol(const std::string& name);

/// Draws a binding for every free symbol of `e`.
Bindings sample_bindings(const Expr& e, std::mt19937_64& rng, const SampleBox& box = {});

struct ProbeOptions {
  int trials = 20;
  double tol = 1e-12;
  std::uint64_t seed = 0x5eed;
  SampleBox box{};
  int max_retries = 100;
};

/// Randomized semantic equality: true iff |e1 - e2| <= tol * (1 + |e1|) at
/// `trials` bindings drawn from a fixed-seed generator. Points where either
/// side is not finite (or divides by zero) are resampled, up to max_retries.
bool equality_probe(const Expr& e1, const Expr& e2, const ProbeOptions& opts = {});

/// Largest relative residual |e1 - e2| / (1 + |e1|) over the probe points.
double probe_residual(const Expr& e1, const Expr& e2, const ProbeOptions& opts = {});

}  // namespace twr
