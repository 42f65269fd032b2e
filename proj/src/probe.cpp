#include "twr/probe.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <stdexcept>

namespace twr {

bool is_coordinate_symbol(const std::string& name) {
  static const std::regex coord(R"([xz][0-3]|tau|z|t)");
  return std::regex_match(name, coord);
}

Bindings sample_bindings(const Expr& e, std::mt19937_64& rng, const SampleBox& box) {
  std::uniform_real_distribution<double> coord(box.coord_lo, box.coord_hi);
  std::uniform_real_distribution<double> param(box.param_lo, box.param_hi);
  Bindings b;
  for (const auto& name : free_symbols(e)) {
    b[name] = is_coordinate_symbol(name) ? coord(rng) : param(rng);
  }
  return b;
}

namespace {

bool finite(std::complex<double> v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

double probe_residual(const Expr& e1, const Expr& e2, const ProbeOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("equality_probe needs at least one trial");
  std::mt19937_64 rng(opts.seed);
  // Both sides are sampled over the union of their symbols so that a symbol
  // present on one side only still varies.
  const Expr both = Expr::sum({e1, e2});
  double worst = 0.0;
  int retries = 0;
  for (int t = 0; t < opts.trials;) {
    const Bindings b = sample_bindings(both, rng, opts.box);
    std::complex<double> v1;
    std::complex<double> v2;
    try {
      v1 = eval_numeric(e1, b);
      v2 = eval_numeric(e2, b);
    } catch (const std::domain_error&) {
      v1 = {NAN, NAN};
    }
    if (!finite(v1) || !finite(v2)) {
      if (++retries > opts.max_retries) return INFINITY;
      continue;
    }
    worst = std::max(worst, std::abs(v1 - v2) / (1.0 + std::abs(v1)));
    ++t;
  }
  return worst;
}

bool equality_probe(const Expr& e1, const Expr& e2, const ProbeOptions& opts) {
  return probe_residual(e1, e2, opts) <= opts.tol;
}

}  // namespace twr
