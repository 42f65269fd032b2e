#include "twr/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <ostream>

namespace twr {

namespace detail {

struct Node {
  ExprKind kind = ExprKind::Constant;
  ComplexRational value;
  std::string name;
  Func func = Func::Exp;
  int exponent = 0;
  std::vector<Expr> children;
  std::size_t hash = 0;
};

}  // namespace detail

namespace {

using detail::Node;

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6U) + (seed >> 2U));
}

std::size_t hash_node(const Node& n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  switch (n.kind) {
    case ExprKind::Constant:
      h = mix(h, std::hash<std::int64_t>{}(n.value.re().num()));
      h = mix(h, std::hash<std::int64_t>{}(n.value.re().den()));
      h = mix(h, std::hash<std::int64_t>{}(n.value.im().num()));
      h = mix(h, std::hash<std::int64_t>{}(n.value.im().den()));
      break;
    case ExprKind::Symbol:
      h = mix(h, std::hash<std::string>{}(n.name));
      break;
    case ExprKind::Function:
      h = mix(h, static_cast<std::size_t>(n.func));
      break;
    case ExprKind::Power:
      h = mix(h, std::hash<int>{}(n.exponent));
      break;
    default:
      break;
  }
  for (const auto& c : n.children) h = mix(h, c.hash());
  return h;
}

std::shared_ptr<const Node> finish(Node n) {
  n.hash = hash_node(n);
  return std::make_shared<const Node>(std::move(n));
}

bool is_reserved(std::string_view name) {
  return name == "i" || name == "sinh" || name == "cosh" || name == "exp" || name == "tanh";
}

}  // namespace

const char* func_name(Func f) {
  switch (f) {
    case Func::Sinh:
      return "sinh";
    case Func::Cosh:
      return "cosh";
    case Func::Exp:
      return "exp";
    case Func::Tanh:
      return "tanh";
  }
  return "?";
}

Expr::Expr() : Expr(ComplexRational{}) {}
Expr::Expr(std::int64_t value) : Expr(ComplexRational{Rational{value}}) {}
Expr::Expr(Rational value) : Expr(ComplexRational{value}) {}

Expr::Expr(ComplexRational value) {
  Node n;
  n.kind = ExprKind::Constant;
  n.value = value;
  node_ = finish(std::move(n));
}

Expr Expr::symbol(std::string_view name) {
  const bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                  std::all_of(name.begin(), name.end(), [](char c) {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                  });
  if (!ok || is_reserved(name)) throw std::invalid_argument("invalid symbol name '" + std::string(name) + "'");
  Node n;
  n.kind = ExprKind::Symbol;
  n.name = std::string(name);
  return Expr(finish(std::move(n)));
}

Expr Expr::imaginary_unit() { return Expr(ComplexRational::i()); }

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  for (auto& t : terms) {
    if (t.kind() == ExprKind::Sum) {
      flat.insert(flat.end(), t.children().begin(), t.children().end());
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (flat.empty()) return Expr{};
  if (flat.size() == 1) return flat.front();
  std::sort(flat.begin(), flat.end());
  Node n;
  n.kind = ExprKind::Sum;
  n.children = std::move(flat);
  return Expr(finish(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  for (auto& f : factors) {
    if (f.kind() == ExprKind::Product) {
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.empty()) return Expr{1};
  if (flat.size() == 1) return flat.front();
  std::sort(flat.begin(), flat.end());
  Node n;
  n.kind = ExprKind::Product;
  n.children = std::move(flat);
  return Expr(finish(std::move(n)));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent == 1) return base;
  if (exponent == 0) return Expr{1};
  Node n;
  n.kind = ExprKind::Power;
  n.exponent = exponent;
  n.children.push_back(std::move(base));
  return Expr(finish(std::move(n)));
}

Expr Expr::function(Func f, Expr arg) {
  Node n;
  n.kind = ExprKind::Function;
  n.func = f;
  n.children.push_back(std::move(arg));
  return Expr(finish(std::move(n)));
}

ExprKind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return node_->kind == ExprKind::Constant && node_->value.is_zero(); }
bool Expr::is_one() const { return node_->kind == ExprKind::Constant && node_->value.is_one(); }

const ComplexRational& Expr::value() const {
  if (node_->kind != ExprKind::Constant) throw std::logic_error("value() on non-constant");
  return node_->value;
}
const std::string& Expr::name() const {
  if (node_->kind != ExprKind::Symbol) throw std::logic_error("name() on non-symbol");
  return node_->name;
}
Func Expr::func() const {
  if (node_->kind != ExprKind::Function) throw std::logic_error("func() on non-function");
  return node_->func;
}
int Expr::exponent() const {
  if (node_->kind != ExprKind::Power) throw std::logic_error("exponent() on non-power");
  return node_->exponent;
}
const std::vector<Expr>& Expr::children() const { return node_->children; }
const Expr& Expr::operand() const {
  if (node_->kind != ExprKind::Power && node_->kind != ExprKind::Function) {
    throw std::logic_error("operand() on node without a single operand");
  }
  return node_->children.front();
}
std::size_t Expr::hash() const { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case ExprKind::Constant:
      return x.value <=> y.value;
    case ExprKind::Symbol:
      return x.name <=> y.name;
    case ExprKind::Function:
      if (auto c = x.func <=> y.func; c != 0) return c;
      break;
    case ExprKind::Power:
      if (auto c = x.children.front() <=> y.children.front(); c != 0) return c;
      return x.exponent <=> y.exponent;
    default:
      break;
  }
  return std::lexicographical_compare_three_way(x.children.begin(), x.children.end(), y.children.begin(),
                                                y.children.end());
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::product({a, Expr::power(b, -1)}); }
Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(-a.value());
  return Expr::product({Expr{-1}, a});
}
Expr pow(const Expr& base, int exponent) { return Expr::power(base, exponent); }
Expr sinh(const Expr& u) { return Expr::function(Func::Sinh, u); }
Expr cosh(const Expr& u) { return Expr::function(Func::Cosh, u); }
Expr exp(const Expr& u) { return Expr::function(Func::Exp, u); }
Expr tanh(const Expr& u) { return Expr::function(Func::Tanh, u); }

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.str(); }

namespace {

Expr derivative_raw(const Expr& e, const std::string& var) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return Expr{};
    case ExprKind::Symbol:
      return Expr{e.name() == var ? 1 : 0};
    case ExprKind::Sum: {
      std::vector<Expr> terms;
      for (const auto& c : e.children()) terms.push_back(derivative_raw(c, var));
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Product: {
      const auto& f = e.children();
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < f.size(); ++k) {
        Expr dk = derivative_raw(f[k], var);
        if (dk.is_zero()) continue;
        std::vector<Expr> factors;
        for (std::size_t j = 0; j < f.size(); ++j) factors.push_back(j == k ? dk : f[j]);
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Power: {
      const int n = e.exponent();
      return Expr::product({Expr{n}, Expr::power(e.operand(), n - 1), derivative_raw(e.operand(), var)});
    }
    case ExprKind::Function: {
      const Expr& u = e.operand();
      Expr du = derivative_raw(u, var);
      switch (e.func()) {
        case Func::Sinh:
          return cosh(u) * du;
        case Func::Cosh:
          return sinh(u) * du;
        case Func::Exp:
          return e * du;
        case Func::Tanh:
          return (Expr{1} - pow(e, 2)) * du;
      }
    }
  }
  throw std::logic_error("unreachable");
}

Expr substitute_raw(const Expr& e, const std::map<std::string, Expr>& pairs) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e;
    case ExprKind::Symbol: {
      auto it = pairs.find(e.name());
      return it == pairs.end() ? e : it->second;
    }
    case ExprKind::Sum:
    case ExprKind::Product: {
      std::vector<Expr> parts;
      for (const auto& c : e.children()) parts.push_back(substitute_raw(c, pairs));
      return e.kind() == ExprKind::Sum ? Expr::sum(std::move(parts)) : Expr::product(std::move(parts));
    }
    case ExprKind::Power:
      return Expr::power(substitute_raw(e.operand(), pairs), e.exponent());
    case ExprKind::Function:
      return Expr::function(e.func(), substitute_raw(e.operand(), pairs));
  }
  throw std::logic_error("unreachable");
}

Expr linearize_raw(const Expr& e, Func f) {
  switch (e.kind()) {
    case ExprKind::Constant:
    case ExprKind::Symbol:
      return e;
    case ExprKind::Sum:
    case ExprKind::Product: {
      std::vector<Expr> parts;
      for (const auto& c : e.children()) parts.push_back(linearize_raw(c, f));
      return e.kind() == ExprKind::Sum ? Expr::sum(std::move(parts)) : Expr::product(std::move(parts));
    }
    case ExprKind::Power:
      return Expr::power(linearize_raw(e.operand(), f), e.exponent());
    case ExprKind::Function: {
      Expr arg = linearize_raw(e.operand(), f);
      return e.func() == f ? arg : Expr::function(e.func(), arg);
    }
  }
  throw std::logic_error("unreachable");
}

void collect_symbols(const Expr& e, std::set<std::string>& out) {
  if (e.is_symbol()) {
    out.insert(e.name());
    return;
  }
  for (const auto& c : e.children()) collect_symbols(c, out);
}

}  // namespace

Expr differentiate(const Expr& e, const Expr& var) {
  if (!var.is_symbol()) throw std::invalid_argument("differentiate: variable must be a symbol, got " + var.str());
  return simplify(derivative_raw(e, var.name()));
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& pairs) {
  return simplify(substitute_raw(e, pairs));
}

Expr linearize_function(const Expr& e, Func f) { return simplify(linearize_raw(e, f)); }

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

bool has_imaginary_constant(const Expr& e) {
  if (e.is_constant()) return !e.value().is_real();
  return std::any_of(e.children().begin(), e.children().end(), has_imaginary_constant);
}

std::complex<double> eval_numeric(const Expr& e, const Bindings& b) {
  using C = std::complex<double>;
  switch (e.kind()) {
    case ExprKind::Constant:
      return e.value().to_complex();
    case ExprKind::Symbol: {
      auto it = b.find(e.name());
      if (it == b.end()) throw UnboundSymbol(e.name());
      return it->second;
    }
    case ExprKind::Sum: {
      C acc{0.0, 0.0};
      for (const auto& c : e.children()) acc += eval_numeric(c, b);
      return acc;
    }
    case ExprKind::Product: {
      C acc{1.0, 0.0};
      for (const auto& c : e.children()) acc *= eval_numeric(c, b);
      return acc;
    }
    case ExprKind::Power: {
      C base = eval_numeric(e.operand(), b);
      int n = e.exponent();
      if (n < 0) {
        if (base == C{0.0, 0.0}) throw std::domain_error("division by zero in " + e.str());
        base = C{1.0, 0.0} / base;
        n = -n;
      }
      C acc{1.0, 0.0};
      while (n != 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
      }
      return acc;
    }
    case ExprKind::Function: {
      const C u = eval_numeric(e.operand(), b);
      switch (e.func()) {
        case Func::Sinh:
          return std::sinh(u);
        case Func::Cosh:
          return std::cosh(u);
        case Func::Exp:
          return std::exp(u);
        case Func::Tanh:
          return std::tanh(u);
      }
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace twr
