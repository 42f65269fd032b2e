#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twr/rational.hpp"

namespace twr {

enum class ExprKind { Constant, Symbol, Function, Power, Product, Sum };
enum class Func { Sinh, Cosh, Exp, Tanh };

const char* func_name(Func f);

namespace detail {
struct Node;
}

/// Immutable symbolic expression.
///
/// Nodes are shared and never mutated after construction, so an Expr is cheap
/// to copy and safe to share between threads. The builders flatten nested sums
/// and products and sort their children into a deterministic order; they do
/// not fold constants or collect like terms. simplify() produces the canonical
/// form: a Laurent polynomial in symbols, sinh/cosh/tanh atoms, a single merged
/// exp atom per monomial, and inverse powers of irreducible sums, with
/// cosh(u)^2 rewritten as 1 + sinh(u)^2.
class Expr {
 public:
  Expr();  // the constant 0
  Expr(std::int64_t value);      // NOLINT(google-explicit-constructor)
  Expr(int value) : Expr(static_cast<std::int64_t>(value)) {}  // NOLINT
  Expr(Rational value);          // NOLINT
  Expr(ComplexRational value);   // NOLINT

  /// Throws std::invalid_argument for names that are not identifiers or that
  /// collide with the grammar (`i`, function names).
  static Expr symbol(std::string_view name);
  static Expr imaginary_unit();
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, int exponent);
  static Expr function(Func f, Expr arg);

  ExprKind kind() const;
  bool is_constant() const { return kind() == ExprKind::Constant; }
  bool is_symbol() const { return kind() == ExprKind::Symbol; }
  bool is_zero() const;
  bool is_one() const;

  const ComplexRational& value() const;  // Constant
  const std::string& name() const;       // Symbol
  Func func() const;                     // Function
  int exponent() const;                  // Power
  /// Sum terms, product factors, or the single base / argument.
  const std::vector<Expr>& children() const;
  const Expr& operand() const;  // Power base or Function argument

  std::size_t hash() const;
  std::string str() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent);
Expr sinh(const Expr& u);
Expr cosh(const Expr& u);
Expr exp(const Expr& u);
Expr tanh(const Expr& u);

inline Expr sym(std::string_view name) { return Expr::symbol(name); }
inline const Expr& I() {
  static const Expr unit = Expr::imaginary_unit();
  return unit;
}

std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Canonical form. Idempotent, and value-preserving wherever the input is
/// defined. Throws std::domain_error on an exact division by zero.
Expr simplify(const Expr& e);

/// Exact partial derivative with respect to the symbol `var`, simplified.
/// Throws std::invalid_argument if `var` is not a symbol.
Expr differentiate(const Expr& e, const Expr& var);

/// Simultaneous substitution of symbols by expressions, then simplify.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& pairs);

/// Replaces every application of `f` by its argument (tanh(u) -> u and the
/// like). Used for first-order truncation of known odd functions.
Expr linearize_function(const Expr& e, Func f);

std::set<std::string> free_symbols(const Expr& e);

/// True when the expression contains no constant with a nonzero imaginary part.
bool has_imaginary_constant(const Expr& e);

using Bindings = std::map<std::string, std::complex<double>>;

class UnboundSymbol : public std::runtime_error {
 public:
  explicit UnboundSymbol(const std::string& name)
      : std::runtime_error("unbound symbol '" + name + "'"), symbol_(name) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

/// Double-precision complex value. Throws UnboundSymbol for a free symbol
/// missing from `b` and std::domain_error for a negative power of zero.
std::complex<double> eval_numeric(const Expr& e, const Bindings& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Parses the infix grammar produced by Expr::str():
///   sums and differences, `*`, `/`, integer powers with `^`, unary minus,
///   sinh/cosh/exp/tanh applications, `i`, integer/rational/decimal literals
///   and identifiers. The result is simplified.
Expr parse_expr(std::string_view text);

}  // namespace twr

template <>
struct std::hash<twr::Expr> {
  std::size_t operator()(const twr::Expr& e) const noexcept { return e.hash(); }
};
