#include "twr/random_expr.hpp"

namespace twr {

namespace {

Expr random_leaf(std::mt19937_64& rng, const RandomExprOptions& opts) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int k = pick(rng);
  if (k < 2) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    return Expr(Rational(num(rng), den(rng)));
  }
  if (k == 2) return Expr::product({Expr(Rational(1, 2)), I()});
  std::uniform_int_distribution<std::size_t> s(0, opts.symbols.size() - 1);
  return Expr::symbol(opts.symbols[s(rng)]);
}

Expr random_node(std::mt19937_64& rng, const RandomExprOptions& opts, int depth) {
  std::bernoulli_distribution leaf(opts.leaf_probability);
  if (depth >= opts.max_depth || (depth > 0 && leaf(rng))) return random_leaf(rng, opts);
  std::uniform_int_distribution<int> kind(0, 9);
  switch (kind(rng)) {
    case 0:
    case 1:
    case 2:
      return random_node(rng, opts, depth + 1) + random_node(rng, opts, depth + 1);
    case 3:
    case 4:
    case 5:
      return random_node(rng, opts, depth + 1) * random_node(rng, opts, depth + 1);
    case 6: {
      // Inverse of a coordinate-like symbol only; sampling keeps it away from 0.
      std::uniform_int_distribution<int> e(-2, -1);
      std::uniform_int_distribution<std::size_t> s(0, opts.symbols.size() - 1);
      const Expr base = Expr::symbol(opts.symbols[s(rng)]);
      const int n = e(rng);
      return opts.inverse_powers ? pow(base, n) : pow(base, -n);
    }
    case 7:
      return pow(random_leaf(rng, opts), 2);
    default: {
      std::uniform_int_distribution<int> f(0, 3);
      std::uniform_int_distribution<std::size_t> s(0, opts.symbols.size() - 1);
      std::uniform_int_distribution<int> scale(-2, 2);
      int c = scale(rng);
      if (c == 0) c = 1;
      const Expr arg = Expr{c} * Expr::symbol(opts.symbols[s(rng)]);
      return Expr::function(static_cast<Func>(f(rng)), arg) * random_node(rng, opts, depth + 1);
    }
  }
}

}  // namespace

Expr random_expr(std::mt19937_64& rng, const RandomExprOptions& opts) { return random_node(rng, opts, 0); }

}  // namespace twr
