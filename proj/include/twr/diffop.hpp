#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "twr/chart.hpp"
#include "twr/expr.hpp"
#include "twr/rindler.hpp"

namespace twr {

/// Derivative orders with respect to the four chart coordinates.
using MultiIndex = std::array<int, 4>;

/// Linear differential operator sum_k c_k(x) d^{alpha_k} on one chart.
///
/// Terms are keyed by multi-index, coefficients are kept simplified, and
/// zero coefficients are dropped, so structural equality is meaningful.
class DiffOp {
 public:
  explicit DiffOp(Chart chart);

  /// coeff * d/d(coordinate mu)
  static DiffOp derivative(const Chart& chart, int mu, const Expr& coeff = Expr{1});
  /// Order-zero operator: multiplication by f.
  static DiffOp multiplication(const Chart& chart, const Expr& f);
  static DiffOp from_terms(const Chart& chart, const std::map<MultiIndex, Expr>& terms);

  const Chart& chart() const { return chart_; }
  const std::map<MultiIndex, Expr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest total derivative order (0 for the zero operator).
  int order() const;

  /// sum_k c_k * d^{alpha_k} f, simplified. Throws ChartMismatch when f uses
  /// the other chart's coordinates.
  Expr apply(const Expr& f) const;

  /// Conventional operator notation, e.g. -sinh(a*z0)*i*d/dz1 + (cosh(a*z0)/(a*z1))*i*d/dz0.
  std::string str() const;

  friend DiffOp operator+(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator*(const Expr& c, const DiffOp& d);
  DiffOp operator-() const { return Expr{-1} * *this; }

  friend bool operator==(const DiffOp& a, const DiffOp& b);
  friend std::strong_ordering operator<=>(const DiffOp& a, const DiffOp& b);

 private:
  void add_term(const MultiIndex& alpha, const Expr& coeff);

  Chart chart_;
  std::map<MultiIndex, Expr> terms_;
};

/// Translation generator P_mu = i d_mu on the Minkowski chart.
DiffOp momentum(int mu);
/// Lorentz generator M_ab = i (x_a d_b - x_b d_a) on the Minkowski chart, with
/// the lowered coordinate x_a = eta_aa x^a.
DiffOp lorentz(int alpha, int beta);

/// Transports a first-order Minkowski operator to the Rindler chart by the
/// chain rule: coefficients are composed with the map and each d/dx^mu becomes
/// sum_nu (d z^nu / d x^mu) d/dz^nu. Throws std::invalid_argument for a
/// non-Minkowski input or for derivative order >= 2.
DiffOp pullback(const DiffOp& d, const RindlerMap& map = RindlerMap{});

struct BidiffTerm {
  Expr weight;
  DiffOp left;
  DiffOp right;
};

/// Finite sum of weight * (left (x) right) on one chart.
///
/// Normal form: each leg is scaled so its leading constant is 1 (the scale
/// moves into the weight), identical leg pairs are merged and zero terms are
/// dropped, terms are sorted. Weights must be free of chart coordinates so
/// that deformation parameters stay visible outside the legs.
class BidiffOp {
 public:
  explicit BidiffOp(Chart chart);
  static BidiffOp tensor(const DiffOp& left, const DiffOp& right, const Expr& weight = Expr{1});

  const Chart& chart() const { return chart_; }
  const std::vector<BidiffTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// sum weight * (left f) * (right g), simplified.
  Expr apply(const Expr& f, const Expr& g) const;

  BidiffOp scaled(const Expr& c) const;
  BidiffOp pulled_back(const RindlerMap& map = RindlerMap{}) const;
  std::string str() const;

  friend BidiffOp operator+(const BidiffOp& a, const BidiffOp& b);
  friend BidiffOp operator-(const BidiffOp& a, const BidiffOp& b);
  friend bool operator==(const BidiffOp& a, const BidiffOp& b);

 private:
  void add(const Expr& weight, const DiffOp& left, const DiffOp& right);
  void normalize();

  Chart chart_;
  std::vector<BidiffTerm> terms_;
};

/// A (x) B - B (x) A.
BidiffOp wedge(const DiffOp& a, const DiffOp& b);

/// Applies `o` to f (x) g, i.e. bidiff_apply.
inline Expr bidiff_apply(const BidiffOp& o, const Expr& f, const Expr& g) { return o.apply(f, g); }

}  // namespace twr
