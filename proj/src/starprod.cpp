#include "twr/starprod.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace twr {

namespace {

int eta(int mu) { return Chart::eta(mu); }
int delta(int a, int b) { return a == b ? 1 : 0; }

Expr lowered(int rho) { return Expr{eta(rho)} * Chart::minkowski().coordinate(rho); }

// i C^rho_{mu nu} x_rho for covariant indices.
Expr lie_covariant(const LieParams& p, int mu, int nu) {
  const int al = p.alpha;
  const int be = p.beta;
  const Expr zeta_mu = Expr{eta(mu)} * p.zeta[mu];
  const Expr zeta_nu = Expr{eta(nu)} * p.zeta[nu];
  std::vector<Expr> terms;
  for (int rho = 0; rho < 4; ++rho) {
    const int c_mu = eta(be) * delta(be, nu) * delta(rho, al) - eta(al) * delta(al, nu) * delta(rho, be);
    const int c_nu = eta(al) * delta(al, mu) * delta(rho, be) - eta(be) * delta(be, mu) * delta(rho, al);
    terms.push_back((Expr{c_mu} * zeta_mu + Expr{c_nu} * zeta_nu) * p.inv_kappa * lowered(rho));
  }
  return I() * Expr::sum(std::move(terms));
}

// First-order form of i tanh(xi/2) (...) {x, x} for the ordered covariant pair,
// with tanh(xi/2) -> xi/2 and {x_b, x_d} -> 2 x_b x_d.
Expr quadratic_covariant_ordered(const QuadraticParams& p, int mu, int nu) {
  auto e = [](int a, int b) { return Expr{eta(a) * delta(a, b)}; };
  auto anti = [](int a, int b) { return Expr{2} * lowered(a) * lowered(b); };
  const int al = p.alpha, be = p.beta, ga = p.gamma, de = p.delta;
  const Expr bracket = e(al, mu) * e(ga, nu) * anti(be, de) - e(al, mu) * e(de, nu) * anti(be, ga) -
                       e(be, mu) * e(ga, nu) * anti(al, de) + e(be, mu) * e(de, nu) * anti(al, ga);
  return I() * (p.xi / 2) * bracket;
}

std::string pair_label(const Chart& chart, int mu, int nu) {
  return "[" + chart.coordinate_name(mu) + ", " + chart.coordinate_name(nu) + "]";
}

}  // namespace

Expr star(const Expr& f, const Expr& g, const LinearTwist& t) {
  check_chart(t.chart, f);
  check_chart(t.chart, g);
  return simplify(f * g + t.op.apply(f, g));
}

Expr commutator(const Expr& f, const Expr& g, const LinearTwist& t) {
  return simplify(star(f, g, t) - star(g, f, t));
}

Expr CommutatorTable::at(int mu, int nu) const {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw std::out_of_range("commutator table index");
  if (mu == nu) return Expr{0};
  if (mu < nu) return entries.at({mu, nu});
  return simplify(-entries.at({nu, mu}));
}

std::string CommutatorTable::to_json() const {
  nlohmann::ordered_json j;
  j["chart"] = chart.name();
  j["twist"]["kind"] = to_string(twist.kind());
  j["twist"]["config"] = twist.to_config();
  auto& arr = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [key, value] : entries) {
    arr.push_back({{"mu", key.first},
                   {"nu", key.second},
                   {"lhs", pair_label(chart, key.first, key.second)},
                   {"value", value.str()}});
  }
  return j.dump(2) + "\n";
}

std::string CommutatorTable::to_text() const {
  std::ostringstream out;
  out << "# " << to_string(twist.kind()) << " twist, " << chart.name() << " chart\n";
  std::size_t width = 0;
  for (const auto& [key, value] : entries) width = std::max(width, pair_label(chart, key.first, key.second).size());
  for (const auto& [key, value] : entries) {
    const std::string lhs = pair_label(chart, key.first, key.second);
    out << lhs << std::string(width - lhs.size(), ' ') << " = " << value.str() << "\n";
  }
  return out.str();
}

CommutatorTable build_table(const LinearTwist& t) {
  CommutatorTable table{t.spec, t.chart, {}};
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      table.entries[{mu, nu}] = commutator(t.chart.coordinate(mu), t.chart.coordinate(nu), t);
    }
  }
  return table;
}

Expr expected_minkowski_commutator(const TwistSpec& spec, int mu, int nu) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw std::out_of_range("commutator index");
  Expr covariant;
  switch (spec.kind()) {
    case TwistKind::Canonical:
      // theta with lowered indices paired with lowered coordinates.
      covariant = I() * Expr{eta(mu) * eta(nu)} * spec.canonical_params().theta[mu][nu];
      break;
    case TwistKind::LieAlgebraic:
      covariant = lie_covariant(spec.lie_params(), mu, nu);
      break;
    case TwistKind::Quadratic:
      covariant = quadratic_covariant_ordered(spec.quadratic_params(), mu, nu) -
                  quadratic_covariant_ordered(spec.quadratic_params(), nu, mu);
      break;
  }
  return simplify(Expr{eta(mu) * eta(nu)} * covariant);
}

bool RelationReport::passed() const {
  return anticommutators_classical &&
         std::all_of(entries.begin(), entries.end(), [](const RelationCheck& c) { return c.passed(); });
}

std::string RelationReport::str() const {
  std::ostringstream out;
  const Chart m = Chart::minkowski();
  for (const auto& c : entries) {
    out << (c.passed() ? "PASS " : "FAIL ") << pair_label(m, c.mu, c.nu) << " expected " << c.expected.str()
        << " got " << c.actual.str();
    if (!c.passed()) out << " residual " << c.residual.str() << " (numeric " << c.numeric_residual << ")";
    out << "\n";
  }
  if (kind == TwistKind::Quadratic) {
    out << (anticommutators_classical ? "PASS" : "FAIL") << " anticommutators carry no first-order part\n";
  }
  return out.str();
}

RelationReport verify_minkowski_relations(const LinearTwist& t, const ProbeOptions& probe) {
  if (t.chart.kind() != ChartKind::Minkowski) throw ChartMismatch("Minkowski relations need a Minkowski-chart twist");
  RelationReport report;
  report.kind = t.spec.kind();
  const CommutatorTable table = build_table(t);
  for (const auto& [key, actual] : table.entries) {
    RelationCheck c;
    c.mu = key.first;
    c.nu = key.second;
    c.expected = expected_minkowski_commutator(t.spec, c.mu, c.nu);
    c.actual = actual;
    c.residual = simplify(actual - c.expected);
    c.structural = c.actual == c.expected;
    c.numeric_residual = probe_residual(c.actual, c.expected, probe);
    c.numeric = c.numeric_residual <= probe.tol;
    report.entries.push_back(std::move(c));
  }
  if (report.kind == TwistKind::Quadratic) {
    const Chart& m = t.chart;
    for (int mu = 0; mu < 4 && report.anticommutators_classical; ++mu) {
      for (int nu = mu; nu < 4; ++nu) {
        const Expr anti = simplify(star(m.coordinate(mu), m.coordinate(nu), t) + star(m.coordinate(nu), m.coordinate(mu), t));
        if (!(anti == simplify(2 * m.coordinate(mu) * m.coordinate(nu)))) {
          report.anticommutators_classical = false;
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace twr
