#pragma once

#include <random>
#include <string>
#include <vector>

#include "twr/expr.hpp"

namespace twr {

/// Generator of random expression trees for property checks.
///
/// Trees stay inside the fragment the engine canonicalizes: sums, products,
/// small positive powers, inverse powers of single symbols, and hyperbolic or
/// exponential functions of a scaled symbol. Leaves are drawn from `symbols`
/// or from small rationals.
struct RandomExprOptions {
  int max_depth = 6;
  double leaf_probability = 0.35;
  std::vector<std::string> symbols{"z0", "z1", "z2", "a"};
  /// When false the inverse-power node produces the positive power instead.
  bool inverse_powers = true;
};

Expr random_expr(std::mt19937_64& rng, const RandomExprOptions& opts = {});

}  // namespace twr
