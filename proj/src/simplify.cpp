#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "twr/expr.hpp"

namespace twr {

namespace {

// A monomial is a sorted list of (atom, nonzero exponent). Atoms are symbols,
// sinh/cosh/tanh/exp applications with canonical arguments, and irreducible
// sums (only ever with negative exponents).
struct Factor {
  Expr atom;
  int exp;
  friend bool operator==(const Factor&, const Factor&) = default;
};
using Monomial = std::vector<Factor>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (auto c = a[k].atom <=> b[k].atom; c != 0) return c < 0;
      if (a[k].exp != b[k].exp) return a[k].exp < b[k].exp;
    }
    return false;
  }
};

using Poly = std::map<Monomial, ComplexRational, MonomialLess>;

Poly to_poly(const Expr& e);
Expr from_poly(const Poly& p);

void add_term(Poly& p, const Monomial& m, const ComplexRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

Poly constant_poly(const ComplexRational& c) {
  Poly p;
  add_term(p, {}, c);
  return p;
}

bool is_exp_atom(const Expr& a) { return a.kind() == ExprKind::Function && a.func() == Func::Exp; }

// Merges repeated atoms and folds every exp atom of the monomial into a
// single exp(sum of exponents * arguments).
Monomial normalize_monomial(std::vector<Factor> raw) {
  std::vector<Expr> exp_args;
  std::map<Expr, int> counts;
  for (auto& f : raw) {
    if (f.exp == 0) continue;
    if (is_exp_atom(f.atom)) {
      exp_args.push_back(Expr::product({Expr{f.exp}, f.atom.operand()}));
    } else {
      counts[f.atom] += f.exp;
    }
  }
  if (!exp_args.empty()) {
    Poly arg = to_poly(Expr::sum(std::move(exp_args)));
    if (!arg.empty()) counts[Expr::function(Func::Exp, from_poly(arg))] += 1;
  }
  Monomial m;
  for (auto& [atom, n] : counts) {
    if (n != 0) m.push_back({atom, n});
  }
  return m;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      std::vector<Factor> raw = ma;
      raw.insert(raw.end(), mb.begin(), mb.end());
      add_term(out, normalize_monomial(std::move(raw)), ca * cb);
    }
  }
  return out;
}

// Rewrites cosh(u)^k with k >= 2 as cosh(u)^(k-2) * (1 + sinh(u)^2) until no
// such factor remains.
Poly reduce_hyperbolic(Poly p) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = p.begin(); it != p.end(); ++it) {
      const Monomial& m = it->first;
      auto hit = std::find_if(m.begin(), m.end(), [](const Factor& f) {
        return f.exp >= 2 && f.atom.kind() == ExprKind::Function && f.atom.func() == Func::Cosh;
      });
      if (hit == m.end()) continue;
      const Expr arg = hit->atom.operand();
      std::vector<Factor> lowered = m;
      lowered[static_cast<std::size_t>(hit - m.begin())].exp -= 2;
      std::vector<Factor> with_sinh = lowered;
      with_sinh.push_back({Expr::function(Func::Sinh, arg), 2});
      const ComplexRational c = it->second;
      p.erase(it);
      add_term(p, normalize_monomial(std::move(lowered)), c);
      add_term(p, normalize_monomial(std::move(with_sinh)), c);
      changed = true;
      break;
    }
  }
  return p;
}

Poly pow_poly(Poly base, unsigned n) {
  Poly result = constant_poly(ComplexRational{1});
  while (n != 0) {
    if (n & 1U) result = reduce_hyperbolic(mul(result, base));
    n >>= 1U;
    if (n != 0) base = reduce_hyperbolic(mul(base, base));
  }
  return result;
}

Poly invert(const Poly& p) {
  if (p.empty()) throw std::domain_error("division by zero");
  if (p.size() == 1) {
    const auto& [m, c] = *p.begin();
    std::vector<Factor> raw;
    for (const auto& f : m) raw.push_back({f.atom, -f.exp});
    Poly out;
    add_term(out, normalize_monomial(std::move(raw)), c.inverse());
    return out;
  }
  // Pull out the leading coefficient and the common monomial factor so that
  // the remaining sum is a unique representative of its scalar class.
  const ComplexRational lead = p.begin()->second;
  std::map<Expr, int> common;
  for (const auto& [m, c] : p) {
    for (const auto& f : m) common.try_emplace(f.atom, 0);
  }
  for (auto it = common.begin(); it != common.end();) {
    int lo = 0;
    bool init = false;
    for (const auto& [m, c] : p) {
      int e = 0;
      for (const auto& f : m)
        if (f.atom == it->first) e = f.exp;
      lo = init ? std::min(lo, e) : e;
      init = true;
    }
    it->second = lo;
    it = lo == 0 ? common.erase(it) : std::next(it);
  }
  std::vector<Factor> content_inv;
  for (const auto& [atom, e] : common) content_inv.push_back({atom, -e});
  Poly reduced;
  const ComplexRational lead_inv = lead.inverse();
  for (const auto& [m, c] : p) {
    std::vector<Factor> raw = m;
    raw.insert(raw.end(), content_inv.begin(), content_inv.end());
    add_term(reduced, normalize_monomial(std::move(raw)), c * lead_inv);
  }
  std::vector<Factor> raw = content_inv;
  raw.push_back({from_poly(reduced), -1});
  Poly out;
  add_term(out, normalize_monomial(std::move(raw)), lead_inv);
  return out;
}

Poly function_poly(Func f, const Expr& arg) {
  Poly a = to_poly(arg);
  if (a.empty()) {
    return constant_poly(ComplexRational{(f == Func::Cosh || f == Func::Exp) ? 1 : 0});
  }
  ComplexRational coeff{1};
  if (f != Func::Exp && a.begin()->second.leading_sign() < 0) {
    for (auto& [m, c] : a) c = -c;
    if (f != Func::Cosh) coeff = ComplexRational{-1};
  }
  Poly out;
  add_term(out, {{Expr::function(f, from_poly(a)), 1}}, coeff);
  return out;
}

Poly to_poly(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return constant_poly(e.value());
    case ExprKind::Symbol: {
      Poly p;
      add_term(p, {{e, 1}}, ComplexRational{1});
      return p;
    }
    case ExprKind::Sum: {
      Poly p;
      for (const auto& c : e.children()) {
        for (const auto& [m, k] : to_poly(c)) add_term(p, m, k);
      }
      return p;
    }
    case ExprKind::Product: {
      Poly p = constant_poly(ComplexRational{1});
      for (const auto& c : e.children()) {
        p = reduce_hyperbolic(mul(p, to_poly(c)));
        if (p.empty()) break;
      }
      return p;
    }
    case ExprKind::Power: {
      Poly base = to_poly(e.operand());
      const int n = e.exponent();
      if (n < 0) return pow_poly(invert(base), static_cast<unsigned>(-n));
      return pow_poly(std::move(base), static_cast<unsigned>(n));
    }
    case ExprKind::Function:
      return reduce_hyperbolic(function_poly(e.func(), e.operand()));
  }
  throw std::logic_error("unreachable");
}

Expr from_poly(const Poly& p) {
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p) {
    std::vector<Expr> factors;
    if (!c.is_one() || m.empty()) factors.emplace_back(c);
    for (const auto& f : m) factors.push_back(Expr::power(f.atom, f.exp));
    terms.push_back(Expr::product(std::move(factors)));
  }
  return Expr::sum(std::move(terms));
}

}  // namespace

Expr simplify(const Expr& e) { return from_poly(to_poly(e)); }

}  // namespace twr
