#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twr/probe.hpp"
#include "twr/twists.hpp"

namespace twr {

/// f * g = f g + O(f, g), the star product truncated at linear order.
Expr star(const Expr& f, const Expr& g, const LinearTwist& t);
/// [f, g] = f * g - g * f.
Expr commutator(const Expr& f, const Expr& g, const LinearTwist& t);

struct CommutatorTable {
  TwistSpec twist;
  Chart chart;
  std::map<std::pair<int, int>, Expr> entries;  // mu < nu

  /// [coord_mu, coord_nu] for any ordered pair (antisymmetric, zero on the diagonal).
  Expr at(int mu, int nu) const;
  std::string to_json() const;
  /// One aligned line per pair, e.g. "[z0, z2] = -theta02*cosh(a*z0)/(a*z1)".
  std::string to_text() const;
};

/// All six independent coordinate commutators.
CommutatorTable build_table(const LinearTwist& t);

/// Closed-form Minkowski relation for the pair (mu, nu) of contravariant
/// coordinates x^mu, obtained by raising the indices of the covariant
/// relations [x_mu, x_nu]:
///   canonical  i theta^{mu nu}
///   lie        i C^rho_{mu nu} x_rho
///   quadratic  i tanh(xi/2) (...) {x, x}, at first order in xi, antisymmetrized
Expr expected_minkowski_commutator(const TwistSpec& spec, int mu, int nu);

struct RelationCheck {
  int mu = 0;
  int nu = 0;
  Expr expected;
  Expr actual;
  Expr residual;
  bool structural = false;
  double numeric_residual = 0.0;
  bool numeric = false;
  bool passed() const { return structural && numeric; }
};

struct RelationReport {
  TwistKind kind = TwistKind::Canonical;
  std::vector<RelationCheck> entries;
  /// Quadratic case only: the first-order part of every anticommutator
  /// {x_mu, x_nu} vanishes, so {x_mu, x_nu} = 2 x_mu x_nu at this order.
  bool anticommutators_classical = true;
  bool passed() const;
  std::string str() const;
};

/// Compares every Minkowski table entry with the closed-form relation,
/// structurally and by the randomized probe. Throws ChartMismatch for a
/// twist on the Rindler chart.
RelationReport verify_minkowski_relations(const LinearTwist& t, const ProbeOptions& probe = {});

}  // namespace twr
