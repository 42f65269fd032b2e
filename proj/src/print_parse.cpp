#include <cctype>
#include <string>
#include <vector>

#include "twr/expr.hpp"

namespace twr {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k != 0) out += sep;
    out += parts[k];
  }
  return out;
}

std::string imaginary_str(const Rational& im) {
  const std::int64_t p = im.num() < 0 ? -im.num() : im.num();
  std::string s = im.num() < 0 ? "-" : "";
  if (p != 1) s += std::to_string(p) + "*";
  s += "i";
  if (im.den() != 1) s += "/" + std::to_string(im.den());
  return s;
}

std::string constant_str(const ComplexRational& c) {
  if (c.is_real()) return c.re().str();
  if (c.re().is_zero()) return imaginary_str(c.im());
  std::string im = imaginary_str(c.im());
  if (im.front() == '-') return c.re().str() + " - " + im.substr(1);
  return c.re().str() + " + " + im;
}

std::string print(const Expr& e);

std::string print_atomic(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Symbol:
    case ExprKind::Function:
      return print(e);
    case ExprKind::Constant:
      if (e.value().is_real() && e.value().re().is_integer() && e.value().re().sign() >= 0) return print(e);
      [[fallthrough]];
    default:
      return "(" + print(e) + ")";
  }
}

std::string print_factor(const Expr& e) {
  if (e.kind() == ExprKind::Sum || (e.is_constant() && !e.value().is_real() && !e.value().re().is_zero())) {
    return "(" + print(e) + ")";
  }
  return print(e);
}

std::string print_product(const Expr& e) {
  std::vector<std::string> num;
  std::vector<std::string> den;
  bool negative = false;
  for (const auto& f : e.children()) {
    if (f.is_constant()) {
      const ComplexRational& c = f.value();
      if (c.is_real()) {
        negative = negative != (c.re().sign() < 0);
        const std::int64_t p = c.re().num() < 0 ? -c.re().num() : c.re().num();
        if (p != 1) num.push_back(std::to_string(p));
        if (c.re().den() != 1) den.push_back(std::to_string(c.re().den()));
      } else if (c.re().is_zero()) {
        negative = negative != (c.im().sign() < 0);
        const std::int64_t p = c.im().num() < 0 ? -c.im().num() : c.im().num();
        if (p != 1) num.push_back(std::to_string(p));
        num.emplace_back("i");
        if (c.im().den() != 1) den.push_back(std::to_string(c.im().den()));
      } else {
        num.push_back("(" + constant_str(c) + ")");
      }
    } else if (f.kind() == ExprKind::Power && f.exponent() < 0) {
      den.push_back(print(Expr::power(f.operand(), -f.exponent())));
    } else {
      num.push_back(print_factor(f));
    }
  }
  std::string out = negative ? "-" : "";
  out += num.empty() ? "1" : join(num, "*");
  if (den.size() == 1) {
    out += "/" + den.front();
  } else if (!den.empty()) {
    out += "/(" + join(den, "*") + ")";
  }
  return out;
}

std::string print(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return constant_str(e.value());
    case ExprKind::Symbol:
      return e.name();
    case ExprKind::Function:
      return std::string(func_name(e.func())) + "(" + print(e.operand()) + ")";
    case ExprKind::Power:
      return print_atomic(e.operand()) + "^" + std::to_string(e.exponent());
    case ExprKind::Product:
      return print_product(e);
    case ExprKind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : e.children()) {
        std::string s = print(t);
        if (first) {
          out = s;
          first = false;
        } else if (s.front() == '-') {
          out += " - " + s.substr(1);
        } else {
          out += " + " + s;
        }
      }
      return out;
    }
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  Expr parse_sum() {
    std::vector<Expr> terms{parse_term()};
    while (true) {
      if (accept('+')) {
        terms.push_back(parse_term());
      } else if (accept('-')) {
        terms.push_back(-parse_term());
      } else {
        break;
      }
    }
    return Expr::sum(std::move(terms));
  }

  Expr parse_term() {
    std::vector<Expr> factors{parse_unary()};
    while (true) {
      if (accept('*')) {
        factors.push_back(parse_unary());
      } else if (accept('/')) {
        factors.push_back(Expr::power(parse_unary(), -1));
      } else {
        break;
      }
    }
    return Expr::product(std::move(factors));
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!accept('^')) return base;
    const bool paren = accept('(');
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", pos_);
    int n = 0;
    try {
      n = std::stoi(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      throw ParseError("exponent out of range", start);
    }
    if (paren) expect(')');
    return Expr::power(std::move(base), sign * n);
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string ident(text_.substr(start, pos_ - start));
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        Func f{};
        if (ident == "sinh") {
          f = Func::Sinh;
        } else if (ident == "cosh") {
          f = Func::Cosh;
        } else if (ident == "exp") {
          f = Func::Exp;
        } else if (ident == "tanh") {
          f = Func::Tanh;
        } else {
          throw ParseError("unknown function '" + ident + "'", start);
        }
        ++pos_;
        Expr arg = parse_sum();
        expect(')');
        return Expr::function(f, std::move(arg));
      }
      if (ident == "i") return Expr::imaginary_unit();
      try {
        return Expr::symbol(ident);
      } catch (const std::invalid_argument&) {
        throw ParseError("'" + ident + "' is not a valid symbol", start);
      }
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ + 1 < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (text_[look] == '+' || text_[look] == '-') ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    try {
      return Expr(Rational::parse(std::string(text_.substr(start, pos_ - start))));
    } catch (const std::exception& ex) {
      throw ParseError(ex.what(), start);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Expr::str() const { return print(*this); }

Expr parse_expr(std::string_view text) { return simplify(Parser(text).parse()); }

}  // namespace twr
