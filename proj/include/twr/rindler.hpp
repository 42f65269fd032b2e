#pragma once

#include <array>
#include <map>
#include <string>

#include "twr/chart.hpp"
#include "twr/expr.hpp"

namespace twr {

using ExprVec4 = std::array<Expr, 4>;
using ExprMat4 = std::array<std::array<Expr, 4>, 4>;

/// Map from the Rindler chart to Minkowski space:
///   x0 = N(z1) sinh(a z0),  x1 = N(z1) cosh(a z0),  x2 = z2,  x3 = z3.
///
/// N is the lapse profile, an expression in z1 and parameters (default z1).
class RindlerMap {
 public:
  /// Throws std::invalid_argument if the lapse mentions a coordinate other
  /// than z1 or is not positive at sample points z1 in [0.5, 2].
  explicit RindlerMap(Expr lapse = sym("z1"), Expr acceleration = sym("a"));

  const Expr& lapse() const { return lapse_; }
  const Expr& acceleration() const { return accel_; }

  /// Image of arbitrary Rindler coordinate expressions.
  ExprVec4 forward(const ExprVec4& z) const;
  /// The map on the chart's own coordinates, as substitution pairs x_mu -> x_mu(z).
  std::map<std::string, Expr> substitution() const;

  /// J[mu][nu] = d x^mu / d z^nu.
  ExprMat4 jacobian() const;
  /// K[nu][mu] = d z^nu / d x^mu, expressed in Rindler coordinates.
  ExprMat4 inverse_jacobian() const;

  /// g_ab = sum_mu eta_mu d x^mu/d z^a d x^mu/d z^b, computed symbolically.
  ExprMat4 metric_pullback() const;
  /// The diagonal as commonly printed: (-a N^2, N'^2, 1, 1).
  ExprVec4 printed_metric() const;

 private:
  Expr lapse_;
  Expr accel_;
};

/// Numeric forward map for N = z1.
std::array<double, 4> rindler_to_minkowski(const std::array<double, 4>& z, double a);
/// Numeric inverse on the right wedge x1 > |x0|, for N = z1:
/// z1 = sqrt(x1^2 - x0^2), z0 = artanh(x0 / x1) / a.
std::array<double, 4> minkowski_to_rindler(const std::array<double, 4>& x, double a);

/// Exact inverse of a symbolic 4x4 matrix by cofactors. Throws
/// std::domain_error when the determinant simplifies to zero.
ExprMat4 inverse(const ExprMat4& m);
Expr determinant(const ExprMat4& m);

}  // namespace twr
