#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "twr/chart.hpp"
#include "twr/diffop.hpp"
#include "twr/expr.hpp"
#include "twr/rindler.hpp"

namespace twr {

/// Malformed configuration text: unknown or missing keys, unparsable values.
/// Well-formed but invalid parameters raise plain std::invalid_argument.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TwistKind { Canonical, LieAlgebraic, Quadratic };

std::string to_string(TwistKind k);
/// "canonical", "lie" or "quadratic".
TwistKind twist_kind_from_string(const std::string& s);

using ExprMatrix4 = std::array<std::array<Expr, 4>, 4>;

struct CanonicalParams {
  ExprMatrix4 theta;  // theta^{mu nu}, antisymmetric
};

struct LieParams {
  Expr inv_kappa;             // 1/kappa
  std::array<Expr, 4> zeta;   // zeta^lambda, zero on alpha and beta
  int alpha = 0;
  int beta = 1;
};

struct QuadraticParams {
  Expr xi;
  int alpha = 0;
  int beta = 1;
  int gamma = 2;
  int delta = 3;
};

/// Validated twist parameters. Parameters are expressions so they may be
/// exact rationals or named symbols, but they may not mention coordinates.
class TwistSpec {
 public:
  /// Throws std::invalid_argument unless theta is antisymmetric.
  static TwistSpec canonical(const ExprMatrix4& theta);
  /// Convenience: only theta^{mu nu} = -theta^{nu mu} = value is non-zero.
  static TwistSpec canonical(int mu, int nu, const Expr& value);
  /// Throws std::invalid_argument if alpha == beta or zeta is non-zero on alpha or beta.
  static TwistSpec lie(const Expr& inv_kappa, const std::array<Expr, 4>& zeta, int alpha, int beta);
  /// Throws std::invalid_argument unless the four indices are pairwise distinct.
  static TwistSpec quadratic(const Expr& xi, int alpha, int beta, int gamma, int delta);

  TwistKind kind() const;
  const CanonicalParams& canonical_params() const { return std::get<CanonicalParams>(params_); }
  const LieParams& lie_params() const { return std::get<LieParams>(params_); }
  const QuadraticParams& quadratic_params() const { return std::get<QuadraticParams>(params_); }

  /// Same twist with every deformation parameter multiplied by s.
  TwistSpec scaled(const Expr& s) const;
  /// Same twist with the deformation parameters set to zero.
  TwistSpec classical() const { return scaled(Expr{0}); }

  /// Human-editable `key = value` lines (no section header), the inverse of parse_twist_block.
  std::string to_config() const;

  friend bool operator==(const TwistSpec& a, const TwistSpec& b);

 private:
  explicit TwistSpec(std::variant<CanonicalParams, LieParams, QuadraticParams> p) : params_(std::move(p)) {}
  std::variant<CanonicalParams, LieParams, QuadraticParams> params_;
};

/// Builds a TwistSpec from key/value pairs of a config block.
///   kind = canonical | lie | quadratic
///   canonical: theta01 .. theta23 (missing entries are 0)
///   lie:       inv_kappa, zeta = "z0, z1, z2, z3", alpha, beta
///   quadratic: xi, alpha, beta, gamma, delta
/// Values are parsed as expressions. Unknown keys, missing required keys and
/// malformed values throw ConfigError; invalid parameters throw std::invalid_argument.
TwistSpec parse_twist_block(const std::map<std::string, std::string>& kv);

/// The translation generator on `chart`: P_mu on Minkowski, its pullback on Rindler.
DiffOp translation_generator(const Chart& chart, int mu);
/// The Lorentz generator on `chart`: M_ab on Minkowski, its pullback on Rindler.
DiffOp lorentz_generator(const Chart& chart, int alpha, int beta);

/// Linear part O of the inverse twist, so that Z^{-1} = 1 + O + ...
struct LinearTwist {
  TwistSpec spec;
  Chart chart;
  BidiffOp op;
};

/// Normalization shared by all three twists. With it the Minkowski star
/// commutators are exactly i theta^{mu nu}, i C^rho_{mu nu} x_rho and the
/// linearized quadratic relation.
Expr twist_normalization();

LinearTwist canonical_twist_linear(const ExprMatrix4& theta, const Chart& chart);
LinearTwist lie_twist_linear(const Expr& inv_kappa, const std::array<Expr, 4>& zeta, int alpha, int beta,
                             const Chart& chart);
LinearTwist quadratic_twist_linear(const Expr& xi, int alpha, int beta, int gamma, int delta, const Chart& chart);
LinearTwist build_twist(const TwistSpec& spec, const Chart& chart);

}  // namespace twr
