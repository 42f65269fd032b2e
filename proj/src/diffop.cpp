#include "twr/diffop.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace twr {

namespace {

ComplexRational leading_constant(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e.value();
    case ExprKind::Product:
      return e.children().front().is_constant() ? e.children().front().value() : ComplexRational{1};
    case ExprKind::Sum:
      return leading_constant(e.children().front());
    default:
      return ComplexRational{1};
  }
}

int total_order(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

std::string derivative_str(const Chart& chart, const MultiIndex& alpha) {
  const int n = total_order(alpha);
  std::string out = n > 1 ? "d^" + std::to_string(n) + "/" : "d/";
  for (int k = 0; k < 4; ++k) {
    if (alpha[k] == 0) continue;
    out += "d" + chart.coordinate_name(k);
    if (alpha[k] > 1) out += "^" + std::to_string(alpha[k]);
  }
  return out;
}

std::string coefficient_prefix(const Expr& c) {
  const std::string s = c.str();
  if (c.is_one()) return "";
  if (c == Expr{-1}) return "-";
  const bool compound = c.kind() == ExprKind::Sum || s.find('/') != std::string::npos;
  if (!compound) return s + "*";
  if (c.kind() != ExprKind::Sum && s.front() == '-') return "-(" + s.substr(1) + ")*";
  return "(" + s + ")*";
}

void check_weight(const Chart& chart, const Expr& w) {
  for (const auto& s : free_symbols(w)) {
    if (Chart::minkowski().index_of(s) || chart.index_of(s) || Chart::rindler().index_of(s)) {
      throw std::invalid_argument("bidifferential weight must not depend on coordinates: " + w.str());
    }
  }
}

}  // namespace

DiffOp::DiffOp(Chart chart) : chart_(std::move(chart)) {}

DiffOp DiffOp::derivative(const Chart& chart, int mu, const Expr& coeff) {
  if (mu < 0 || mu > 3) throw std::out_of_range("derivative index " + std::to_string(mu));
  DiffOp d(chart);
  MultiIndex alpha{0, 0, 0, 0};
  alpha[mu] = 1;
  d.add_term(alpha, coeff);
  return d;
}

DiffOp DiffOp::multiplication(const Chart& chart, const Expr& f) {
  DiffOp d(chart);
  d.add_term({0, 0, 0, 0}, f);
  return d;
}

DiffOp DiffOp::from_terms(const Chart& chart, const std::map<MultiIndex, Expr>& terms) {
  DiffOp d(chart);
  for (const auto& [alpha, c] : terms) {
    if (std::any_of(alpha.begin(), alpha.end(), [](int o) { return o < 0; })) {
      throw std::invalid_argument("negative derivative order");
    }
    d.add_term(alpha, c);
  }
  return d;
}

void DiffOp::add_term(const MultiIndex& alpha, const Expr& coeff) {
  check_chart(chart_, coeff);
  auto it = terms_.find(alpha);
  Expr c = simplify(it == terms_.end() ? coeff : it->second + coeff);
  if (c.is_zero()) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_.insert_or_assign(alpha, std::move(c));
  }
}

int DiffOp::order() const {
  int n = 0;
  for (const auto& [alpha, c] : terms_) n = std::max(n, total_order(alpha));
  return n;
}

Expr DiffOp::apply(const Expr& f) const {
  check_chart(chart_, f);
  std::vector<Expr> parts;
  for (const auto& [alpha, c] : terms_) {
    Expr d = f;
    for (int k = 0; k < 4; ++k) {
      for (int n = 0; n < alpha[k]; ++n) d = differentiate(d, chart_.coordinate(k));
    }
    parts.push_back(c * d);
  }
  return simplify(Expr::sum(std::move(parts)));
}

std::string DiffOp::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [alpha, c] : terms_) {
    std::string term;
    if (total_order(alpha) == 0) {
      term = c.kind() == ExprKind::Sum ? "(" + c.str() + ")" : c.str();
    } else {
      const Expr over_i = simplify(c * Expr(ComplexRational(Rational{0}, Rational{-1})));
      if (!has_imaginary_constant(over_i)) {
        term = coefficient_prefix(over_i) + "i*" + derivative_str(chart_, alpha);
      } else {
        term = coefficient_prefix(c) + derivative_str(chart_, alpha);
      }
    }
    if (first) {
      out = term;
      first = false;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
  if (!(a.chart_ == b.chart_)) throw ChartMismatch("adding operators on different charts");
  DiffOp out = a;
  for (const auto& [alpha, c] : b.terms_) out.add_term(alpha, c);
  return out;
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }

DiffOp operator*(const Expr& c, const DiffOp& d) {
  DiffOp out(d.chart_);
  for (const auto& [alpha, k] : d.terms_) out.add_term(alpha, c * k);
  return out;
}

bool operator==(const DiffOp& a, const DiffOp& b) { return a.chart_ == b.chart_ && a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const DiffOp& a, const DiffOp& b) {
  if (auto c = a.chart_.kind() <=> b.chart_.kind(); c != 0) return c;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    if (auto c = ia->second <=> ib->second; c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

DiffOp momentum(int mu) { return DiffOp::derivative(Chart::minkowski(), mu, I()); }

DiffOp lorentz(int alpha, int beta) {
  const Chart m = Chart::minkowski();
  const Expr x_alpha = Expr{Chart::eta(alpha)} * m.coordinate(alpha);
  const Expr x_beta = Expr{Chart::eta(beta)} * m.coordinate(beta);
  return DiffOp::derivative(m, beta, I() * x_alpha) - DiffOp::derivative(m, alpha, I() * x_beta);
}

DiffOp pullback(const DiffOp& d, const RindlerMap& map) {
  if (d.chart().kind() != ChartKind::Minkowski) throw std::invalid_argument("pullback expects a Minkowski operator");
  if (d.order() > 1) {
    throw std::invalid_argument("pullback supports first-order operators only, got order " +
                                std::to_string(d.order()));
  }
  const Chart target = Chart::rindler(map.acceleration().name());
  const auto subs = map.substitution();
  const ExprMat4 k = map.inverse_jacobian();
  DiffOp out(target);
  for (const auto& [alpha, c] : d.terms()) {
    const Expr coeff = substitute(c, subs);
    const auto mu = std::find(alpha.begin(), alpha.end(), 1);
    if (mu == alpha.end()) {
      out = out + DiffOp::multiplication(target, coeff);
      continue;
    }
    const auto m = static_cast<std::size_t>(mu - alpha.begin());
    for (int nu = 0; nu < 4; ++nu) {
      if (k[nu][m].is_zero()) continue;
      out = out + DiffOp::derivative(target, nu, coeff * k[nu][m]);
    }
  }
  return out;
}

BidiffOp::BidiffOp(Chart chart) : chart_(std::move(chart)) {}

BidiffOp BidiffOp::tensor(const DiffOp& left, const DiffOp& right, const Expr& weight) {
  if (!(left.chart() == right.chart())) throw ChartMismatch("tensor legs on different charts");
  BidiffOp o(left.chart());
  o.add(weight, left, right);
  o.normalize();
  return o;
}

void BidiffOp::add(const Expr& weight, const DiffOp& left, const DiffOp& right) {
  if (!(left.chart() == chart_) || !(right.chart() == chart_)) throw ChartMismatch("bidifferential chart mismatch");
  check_weight(chart_, weight);
  terms_.push_back({simplify(weight), left, right});
}

void BidiffOp::normalize() {
  std::vector<BidiffTerm> merged;
  for (auto& t : terms_) {
    if (t.weight.is_zero() || t.left.is_zero() || t.right.is_zero()) continue;
    const ComplexRational cl = leading_constant(t.left.terms().begin()->second);
    const ComplexRational cr = leading_constant(t.right.terms().begin()->second);
    DiffOp left = Expr(cl.inverse()) * t.left;
    DiffOp right = Expr(cr.inverse()) * t.right;
    const Expr w = Expr::product({t.weight, Expr(cl * cr)});
    auto hit = std::find_if(merged.begin(), merged.end(),
                            [&](const BidiffTerm& m) { return m.left == left && m.right == right; });
    if (hit == merged.end()) {
      merged.push_back({simplify(w), std::move(left), std::move(right)});
    } else {
      hit->weight = simplify(hit->weight + w);
    }
  }
  std::erase_if(merged, [](const BidiffTerm& t) { return t.weight.is_zero(); });
  std::sort(merged.begin(), merged.end(), [](const BidiffTerm& a, const BidiffTerm& b) {
    if (auto c = a.left <=> b.left; c != 0) return c < 0;
    return (a.right <=> b.right) < 0;
  });
  terms_ = std::move(merged);
}

Expr BidiffOp::apply(const Expr& f, const Expr& g) const {
  check_chart(chart_, f);
  check_chart(chart_, g);
  std::vector<Expr> parts;
  for (const auto& t : terms_) {
    const Expr lf = t.left.apply(f);
    if (lf.is_zero()) continue;
    const Expr rg = t.right.apply(g);
    if (rg.is_zero()) continue;
    parts.push_back(Expr::product({t.weight, lf, rg}));
  }
  return simplify(Expr::sum(std::move(parts)));
}

BidiffOp BidiffOp::scaled(const Expr& c) const {
  BidiffOp out(chart_);
  for (const auto& t : terms_) out.add(c * t.weight, t.left, t.right);
  out.normalize();
  return out;
}

BidiffOp BidiffOp::pulled_back(const RindlerMap& map) const {
  if (chart_.kind() != ChartKind::Minkowski) throw std::invalid_argument("pullback expects a Minkowski operator");
  BidiffOp out(Chart::rindler(map.acceleration().name()));
  for (const auto& t : terms_) out.add(t.weight, pullback(t.left, map), pullback(t.right, map));
  out.normalize();
  return out;
}

std::string BidiffOp::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (k != 0) out += " + ";
    out += "(" + t.weight.str() + ")*[" + t.left.str() + "](x)[" + t.right.str() + "]";
  }
  return out;
}

BidiffOp operator+(const BidiffOp& a, const BidiffOp& b) {
  if (!(a.chart_ == b.chart_)) throw ChartMismatch("adding bidifferential operators on different charts");
  BidiffOp out = a;
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  out.normalize();
  return out;
}

BidiffOp operator-(const BidiffOp& a, const BidiffOp& b) { return a + b.scaled(Expr{-1}); }

bool operator==(const BidiffOp& a, const BidiffOp& b) {
  if (!(a.chart_ == b.chart_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    const auto& x = a.terms_[k];
    const auto& y = b.terms_[k];
    if (!(x.weight == y.weight) || !(x.left == y.left) || !(x.right == y.right)) return false;
  }
  return true;
}

BidiffOp wedge(const DiffOp& a, const DiffOp& b) {
  if (!(a.chart() == b.chart())) throw ChartMismatch("wedge of operators on different charts");
  return BidiffOp::tensor(a, b) - BidiffOp::tensor(b, a);
}

}  // namespace twr
