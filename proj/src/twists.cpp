#include "twr/twists.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twr {

namespace {

void check_parameter(const Expr& p, const std::string& what) {
  for (const auto& s : free_symbols(p)) {
    if (Chart::minkowski().index_of(s) || Chart::rindler().index_of(s)) {
      throw std::invalid_argument(what + " must not depend on coordinates, got " + p.str());
    }
  }
}

void check_index(int k, const std::string& what) {
  if (k < 0 || k > 3) throw std::invalid_argument(what + " index out of range: " + std::to_string(k));
}

int parse_index(const std::string& key, const std::string& value) {
  int k = -1;
  const auto* end = value.data() + value.size();
  const auto [p, ec] = std::from_chars(value.data(), end, k);
  if (ec != std::errc{} || p != end) throw ConfigError("'" + key + "' must be an integer, got '" + value + "'");
  check_index(k, key);
  return k;
}

Expr parse_value(const std::string& key, const std::string& value) {
  try {
    return parse_expr(value);
  } catch (const ParseError& e) {
    throw ConfigError("'" + key + "': " + e.what());
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

RindlerMap map_for(const Chart& chart) { return RindlerMap(sym("z1"), chart.acceleration()); }

}  // namespace

std::string to_string(TwistKind k) {
  switch (k) {
    case TwistKind::Canonical:
      return "canonical";
    case TwistKind::LieAlgebraic:
      return "lie";
    case TwistKind::Quadratic:
      return "quadratic";
  }
  return "?";
}

TwistKind twist_kind_from_string(const std::string& s) {
  if (s == "canonical") return TwistKind::Canonical;
  if (s == "lie") return TwistKind::LieAlgebraic;
  if (s == "quadratic") return TwistKind::Quadratic;
  throw ConfigError("unknown twist kind '" + s + "' (expected canonical, lie or quadratic)");
}

TwistSpec TwistSpec::canonical(const ExprMatrix4& theta) {
  CanonicalParams p;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      check_parameter(theta[m][n], "theta");
      if (!simplify(theta[m][n] + theta[n][m]).is_zero()) {
        throw std::invalid_argument("theta must be antisymmetric: theta" + std::to_string(m) + std::to_string(n) +
                                    " = " + theta[m][n].str() + ", theta" + std::to_string(n) + std::to_string(m) +
                                    " = " + theta[n][m].str());
      }
      p.theta[m][n] = simplify(theta[m][n]);
    }
  }
  return TwistSpec(p);
}

TwistSpec TwistSpec::canonical(int mu, int nu, const Expr& value) {
  check_index(mu, "theta");
  check_index(nu, "theta");
  if (mu == nu) throw std::invalid_argument("theta has no diagonal component");
  ExprMatrix4 theta;
  theta[mu][nu] = value;
  theta[nu][mu] = -value;
  return canonical(theta);
}

TwistSpec TwistSpec::lie(const Expr& inv_kappa, const std::array<Expr, 4>& zeta, int alpha, int beta) {
  check_index(alpha, "alpha");
  check_index(beta, "beta");
  if (alpha == beta) throw std::invalid_argument("lie twist needs alpha != beta");
  check_parameter(inv_kappa, "inv_kappa");
  LieParams p{simplify(inv_kappa), {}, alpha, beta};
  for (int l = 0; l < 4; ++l) {
    check_parameter(zeta[l], "zeta");
    p.zeta[l] = simplify(zeta[l]);
    if ((l == alpha || l == beta) && !p.zeta[l].is_zero()) {
      throw std::invalid_argument("zeta^" + std::to_string(l) + " must vanish: lambda may not equal alpha or beta");
    }
  }
  return TwistSpec(p);
}

TwistSpec TwistSpec::quadratic(const Expr& xi, int alpha, int beta, int gamma, int delta) {
  const std::array<int, 4> idx{alpha, beta, gamma, delta};
  for (int k : idx) check_index(k, "quadratic");
  if (std::set<int>(idx.begin(), idx.end()).size() != 4) {
    throw std::invalid_argument("quadratic twist needs pairwise distinct alpha, beta, gamma, delta");
  }
  check_parameter(xi, "xi");
  return TwistSpec(QuadraticParams{simplify(xi), alpha, beta, gamma, delta});
}

TwistKind TwistSpec::kind() const {
  switch (params_.index()) {
    case 0:
      return TwistKind::Canonical;
    case 1:
      return TwistKind::LieAlgebraic;
    default:
      return TwistKind::Quadratic;
  }
}

TwistSpec TwistSpec::scaled(const Expr& s) const {
  switch (kind()) {
    case TwistKind::Canonical: {
      ExprMatrix4 theta = canonical_params().theta;
      for (auto& row : theta) {
        for (auto& t : row) t = s * t;
      }
      return canonical(theta);
    }
    case TwistKind::LieAlgebraic: {
      const auto& p = lie_params();
      return lie(s * p.inv_kappa, p.zeta, p.alpha, p.beta);
    }
    case TwistKind::Quadratic: {
      const auto& p = quadratic_params();
      return quadratic(s * p.xi, p.alpha, p.beta, p.gamma, p.delta);
    }
  }
  throw std::logic_error("unreachable");
}

std::string TwistSpec::to_config() const {
  std::ostringstream out;
  out << "kind = " << to_string(kind()) << "\n";
  switch (kind()) {
    case TwistKind::Canonical:
      for (int m = 0; m < 4; ++m) {
        for (int n = m + 1; n < 4; ++n) out << "theta" << m << n << " = " << canonical_params().theta[m][n].str() << "\n";
      }
      break;
    case TwistKind::LieAlgebraic: {
      const auto& p = lie_params();
      out << "inv_kappa = " << p.inv_kappa.str() << "\n";
      out << "zeta = " << p.zeta[0].str() << ", " << p.zeta[1].str() << ", " << p.zeta[2].str() << ", "
          << p.zeta[3].str() << "\n";
      out << "alpha = " << p.alpha << "\nbeta = " << p.beta << "\n";
      break;
    }
    case TwistKind::Quadratic: {
      const auto& p = quadratic_params();
      out << "xi = " << p.xi.str() << "\n";
      out << "alpha = " << p.alpha << "\nbeta = " << p.beta << "\ngamma = " << p.gamma << "\ndelta = " << p.delta
          << "\n";
      break;
    }
  }
  return out.str();
}

bool operator==(const TwistSpec& a, const TwistSpec& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TwistKind::Canonical:
      return a.canonical_params().theta == b.canonical_params().theta;
    case TwistKind::LieAlgebraic: {
      const auto& x = a.lie_params();
      const auto& y = b.lie_params();
      return x.inv_kappa == y.inv_kappa && x.zeta == y.zeta && x.alpha == y.alpha && x.beta == y.beta;
    }
    case TwistKind::Quadratic: {
      const auto& x = a.quadratic_params();
      const auto& y = b.quadratic_params();
      return x.xi == y.xi && x.alpha == y.alpha && x.beta == y.beta && x.gamma == y.gamma && x.delta == y.delta;
    }
  }
  return false;
}

TwistSpec parse_twist_block(const std::map<std::string, std::string>& kv) {
  const auto kind_it = kv.find("kind");
  if (kind_it == kv.end()) throw ConfigError("twist block: missing 'kind'");
  const TwistKind kind = twist_kind_from_string(trim(kind_it->second));

  std::set<std::string> allowed{"kind"};
  switch (kind) {
    case TwistKind::Canonical:
      for (int m = 0; m < 4; ++m) {
        for (int n = m + 1; n < 4; ++n) allowed.insert("theta" + std::to_string(m) + std::to_string(n));
      }
      break;
    case TwistKind::LieAlgebraic:
      allowed.insert({"inv_kappa", "zeta", "alpha", "beta"});
      break;
    case TwistKind::Quadratic:
      allowed.insert({"xi", "alpha", "beta", "gamma", "delta"});
      break;
  }
  for (const auto& [k, v] : kv) {
    if (!allowed.count(k)) throw ConfigError("twist block: unknown key '" + k + "' for kind " + to_string(kind));
  }
  auto required = [&](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("twist block: missing '" + key + "'");
    return trim(it->second);
  };

  switch (kind) {
    case TwistKind::Canonical: {
      ExprMatrix4 theta;
      for (int m = 0; m < 4; ++m) {
        for (int n = m + 1; n < 4; ++n) {
          const std::string key = "theta" + std::to_string(m) + std::to_string(n);
          const auto it = kv.find(key);
          if (it == kv.end()) continue;
          theta[m][n] = parse_value(key, it->second);
          theta[n][m] = -theta[m][n];
        }
      }
      return TwistSpec::canonical(theta);
    }
    case TwistKind::LieAlgebraic: {
      std::array<Expr, 4> zeta;
      std::istringstream in(required("zeta"));
      std::string item;
      int n = 0;
      while (std::getline(in, item, ',')) {
        if (n == 4) throw ConfigError("twist block: 'zeta' needs exactly four components");
        zeta[n++] = parse_value("zeta", item);
      }
      if (n != 4) throw ConfigError("twist block: 'zeta' needs exactly four components");
      return TwistSpec::lie(parse_value("inv_kappa", required("inv_kappa")), zeta,
                            parse_index("alpha", required("alpha")), parse_index("beta", required("beta")));
    }
    case TwistKind::Quadratic:
      return TwistSpec::quadratic(parse_value("xi", required("xi")), parse_index("alpha", required("alpha")),
                                  parse_index("beta", required("beta")), parse_index("gamma", required("gamma")),
                                  parse_index("delta", required("delta")));
  }
  throw std::logic_error("unreachable");
}

DiffOp translation_generator(const Chart& chart, int mu) {
  if (chart.kind() == ChartKind::Minkowski) return momentum(mu);
  return pullback(momentum(mu), map_for(chart));
}

DiffOp lorentz_generator(const Chart& chart, int alpha, int beta) {
  if (chart.kind() == ChartKind::Minkowski) return lorentz(alpha, beta);
  return pullback(lorentz(alpha, beta), map_for(chart));
}

Expr twist_normalization() { return Expr(ComplexRational(Rational{0}, Rational(-1, 2))); }

LinearTwist canonical_twist_linear(const ExprMatrix4& theta, const Chart& chart) {
  return build_twist(TwistSpec::canonical(theta), chart);
}

LinearTwist lie_twist_linear(const Expr& inv_kappa, const std::array<Expr, 4>& zeta, int alpha, int beta,
                             const Chart& chart) {
  return build_twist(TwistSpec::lie(inv_kappa, zeta, alpha, beta), chart);
}

LinearTwist quadratic_twist_linear(const Expr& xi, int alpha, int beta, int gamma, int delta, const Chart& chart) {
  return build_twist(TwistSpec::quadratic(xi, alpha, beta, gamma, delta), chart);
}

LinearTwist build_twist(const TwistSpec& spec, const Chart& chart) {
  const Expr n = twist_normalization();
  BidiffOp op(chart);
  switch (spec.kind()) {
    case TwistKind::Canonical: {
      const auto& theta = spec.canonical_params().theta;
      std::array<DiffOp, 4> f{translation_generator(chart, 0), translation_generator(chart, 1),
                              translation_generator(chart, 2), translation_generator(chart, 3)};
      for (int m = 0; m < 4; ++m) {
        for (int k = m + 1; k < 4; ++k) {
          if (!theta[m][k].is_zero()) op = op + wedge(f[m], f[k]).scaled(n * theta[m][k]);
        }
      }
      break;
    }
    case TwistKind::LieAlgebraic: {
      const auto& p = spec.lie_params();
      if (p.inv_kappa.is_zero()) break;
      const DiffOp m = lorentz_generator(chart, p.alpha, p.beta);
      for (int l = 0; l < 4; ++l) {
        if (!p.zeta[l].is_zero()) op = op + wedge(translation_generator(chart, l), m).scaled(n * p.inv_kappa * p.zeta[l]);
      }
      break;
    }
    case TwistKind::Quadratic: {
      const auto& p = spec.quadratic_params();
      if (p.xi.is_zero()) break;
      op = wedge(lorentz_generator(chart, p.alpha, p.beta), lorentz_generator(chart, p.gamma, p.delta))
               .scaled(n * p.xi);
      break;
    }
  }
  return LinearTwist{spec, chart, op};
}

}  // namespace twr
