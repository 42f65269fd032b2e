#include "twr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "json.hpp"
#include "twr/probe.hpp"
#include "twr/random_expr.hpp"
#include "twr/rindler.hpp"
#include "twr/starprod.hpp"

namespace twr {

namespace {

constexpr double pi = boost::math::constants::pi<double>();

// Collects pass/fail for one invariant: either a worst residual against a
// tolerance, or a count of structural failures (tolerance 0).
class Check {
 public:
  Check(std::string name, double tolerance) : name_(std::move(name)), tol_(tolerance) {}

  void residual(double r, const std::string& where) {
    if (!(r <= worst_) && !std::isnan(worst_)) {
      worst_ = r;
      if (!(r <= tol_) && detail_.empty()) detail_ = where;
    }
    if (std::isnan(r)) {
      worst_ = r;
      if (detail_.empty()) detail_ = where + " (nan)";
    }
  }
  void structural(bool ok, const std::string& where) {
    if (!ok) {
      ++failures_;
      if (detail_.empty()) detail_ = where;
    }
  }

  CheckResult result() const {
    CheckResult r;
    r.name = name_;
    r.tolerance = tol_;
    r.measured = failures_ > 0 ? static_cast<double>(failures_) : worst_;
    r.passed = failures_ == 0 && worst_ <= tol_;
    if (!r.passed) r.detail = detail_;
    return r;
  }

 private:
  std::string name_;
  double tol_;
  double worst_ = 0.0;
  int failures_ = 0;
  std::string detail_;
};

double rel(cplx x, cplx y) { return std::abs(x - y) / std::abs(y); }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
  return g;
}

ProbeOptions probe_with(std::uint64_t seed, double tol, int trials) {
  ProbeOptions p;
  p.seed = seed;
  p.tol = tol;
  p.trials = trials;
  return p;
}

RandomExprOptions rindler_polys(int depth) {
  RandomExprOptions o;
  o.max_depth = depth;
  o.inverse_powers = false;
  o.symbols = {"z0", "z1", "z2", "z3", "a"};
  return o;
}

std::vector<TwistSpec> symbolic_specs() {
  return {TwistSpec::canonical(0, 1, sym("theta")), TwistSpec::canonical(2, 3, sym("theta")),
          TwistSpec::lie(sym("ik"), {Expr{0}, Expr{0}, Expr{1}, sym("s3")}, 0, 1),
          TwistSpec::lie(sym("ik"), {Expr{1}, Expr{0}, Expr{0}, Expr{0}}, 1, 2),
          TwistSpec::quadratic(sym("xi"), 0, 1, 2, 3)};
}

std::string spec_label(const TwistSpec& s) {
  std::string c = s.to_config();
  std::replace(c.begin(), c.end(), '\n', ';');
  return c;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  return Rational(num(rng), den(rng));
}

// ---- expr ---------------------------------------------------------------

void expr_suite(const VerifyOptions& o, std::mt19937_64& rng, std::vector<CheckResult>& out) {
  Check idem("expr.simplify_idempotent", 0);
  Check value("expr.simplify_preserves_value", o.tol.symbolic);
  Check roundtrip("expr.parse_print_roundtrip", 0);
  for (int k = 0; k < 25; ++k) {
    const Expr e = random_expr(rng);
    const Expr s = simplify(e);
    idem.structural(simplify(s) == s, e.str());
    value.residual(probe_residual(e, s, probe_with(rng(), o.tol.symbolic, 4)), e.str());
    roundtrip.structural(parse_expr(s.str()) == s, s.str());
  }
  out.push_back(idem.result());
  out.push_back(value.result());
  out.push_back(roundtrip.result());

  Check rules("expr.derivative_rules", 0);
  Check rules_num("expr.derivative_rules_numeric", 1e-10);
  for (int k = 0; k < 20; ++k) {
    const Expr f = random_expr(rng);
    const Expr g = random_expr(rng);
    const Expr z1 = sym("z1");
    const std::string where = f.str() + " | " + g.str();
    rules.structural(differentiate(3 * f - g, z1) == simplify(3 * differentiate(f, z1) - differentiate(g, z1)), where);
    const Expr prod = differentiate(f * g, z1);
    const Expr rule = simplify(differentiate(f, z1) * g + f * differentiate(g, z1));
    rules.structural(prod == rule, where);
    rules_num.residual(probe_residual(prod, rule, probe_with(rng(), 1e-10, 3)), where);
  }
  out.push_back(rules.result());
  out.push_back(rules_num.result());
}

// ---- diffop -------------------------------------------------------------

void diffop_suite(const VerifyOptions&, std::mt19937_64& rng, std::vector<CheckResult>& out) {
  const RindlerMap map;
  const auto subs = map.substitution();
  std::vector<DiffOp> gens;
  for (int mu = 0; mu < 4; ++mu) gens.push_back(momentum(mu));
  for (int al = 0; al < 4; ++al) {
    for (int be = al + 1; be < 4; ++be) gens.push_back(lorentz(al, be));
  }
  std::vector<DiffOp> pulled;
  for (const auto& g : gens) pulled.push_back(pullback(g, map));

  Check chain("diffop.pullback_chain_rule", 0);
  RandomExprOptions opts;
  opts.symbols = {"x0", "x1", "x2", "x3", "a"};
  opts.max_depth = 3;
  opts.inverse_powers = false;
  for (int k = 0; k < 6; ++k) {
    const Expr g = random_expr(rng, opts);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      chain.structural(substitute(gens[j].apply(g), subs) == pulled[j].apply(substitute(g, subs)),
                       g.str() + " under " + gens[j].str());
    }
  }
  out.push_back(chain.result());

  // Sums of tensor products have no unique normal form, so bilinearity is
  // checked on the action against random polynomial pairs.
  Check wedges("diffop.wedge_bilinear_antisymmetric", 0);
  for (std::size_t i = 0; i < pulled.size(); ++i) {
    const DiffOp& A = pulled[i];
    const DiffOp& B = pulled[(i + 3) % pulled.size()];
    const DiffOp& C = pulled[(i + 5) % pulled.size()];
    wedges.structural(wedge(A, B) == wedge(B, A).scaled(Expr{-1}), A.str() + " ^ " + B.str());
    const BidiffOp sum = wedge(A + B, C);
    const BidiffOp split = wedge(A, C) + wedge(B, C);
    const BidiffOp scaled = wedge(sym("s") * A, C);
    const BidiffOp scaled_ref = wedge(A, C).scaled(sym("s"));
    for (int k = 0; k < 2; ++k) {
      const Expr f = random_expr(rng, rindler_polys(3));
      const Expr g = random_expr(rng, rindler_polys(3));
      const std::string where = "(" + A.str() + ") + (" + B.str() + ") on " + f.str() + " | " + g.str();
      wedges.structural(sum.apply(f, g) == split.apply(f, g), where);
      wedges.structural(scaled.apply(f, g) == scaled_ref.apply(f, g), where);
    }
  }
  out.push_back(wedges.result());
}

// ---- twists -------------------------------------------------------------

void twists_suite(const VerifyOptions&, std::mt19937_64& rng, std::vector<CheckResult>& out) {
  Check constants("twists.constants_annihilated", 0);
  Check chart("twists.chart_consistency", 0);
  Check linear("twists.parameter_linearity", 0);
  const Chart R = Chart::rindler();
  for (const auto& spec : symbolic_specs()) {
    const LinearTwist tw = build_twist(spec, R);
    const LinearTwist tw_s = build_twist(spec.scaled(Expr(Rational(-5, 3))), R);
    chart.structural(build_twist(spec, Chart::minkowski()).op.pulled_back() == tw.op, spec_label(spec));
    for (int k = 0; k < 3; ++k) {
      const Expr f = random_expr(rng, rindler_polys(3));
      const Expr g = random_expr(rng, rindler_polys(3));
      const std::string where = spec_label(spec) + " " + f.str() + " | " + g.str();
      constants.structural(tw.op.apply(Expr{1}, g).is_zero() && tw.op.apply(f, Expr{2}).is_zero(), where);
      linear.structural(tw_s.op.apply(f, g) == simplify(Expr(Rational(-5, 3)) * tw.op.apply(f, g)), where);
    }
  }
  out.push_back(constants.result());
  out.push_back(chart.result());
  out.push_back(linear.result());
}

// ---- starprod -----------------------------------------------------------

void starprod_suite(const VerifyOptions& o, std::mt19937_64& rng, std::vector<CheckResult>& out) {
  const Chart M = Chart::minkowski();
  const Chart R = Chart::rindler();

  Check canon("starprod.minkowski_canonical", 0);
  for (int k = 0; k < 20; ++k) {
    ExprMatrix4 theta;
    for (int m = 0; m < 4; ++m) {
      for (int n = m + 1; n < 4; ++n) {
        theta[m][n] = Expr(random_rational(rng));
        theta[n][m] = -theta[m][n];
      }
    }
    const CommutatorTable t = build_table(build_twist(TwistSpec::canonical(theta), M));
    for (const auto& [key, v] : t.entries) {
      canon.structural(v == simplify(I() * theta[key.first][key.second]), "theta" + std::to_string(key.first) +
                                                                               std::to_string(key.second) + ": " +
                                                                               v.str());
    }
  }
  out.push_back(canon.result());

  Check lie("starprod.minkowski_lie", 0);
  Check lie_num("starprod.minkowski_lie_numeric", o.tol.symbolic);
  std::uniform_int_distribution<int> idx(0, 3);
  for (int k = 0; k < 6; ++k) {
    int al = idx(rng);
    int be = idx(rng);
    while (be == al) be = idx(rng);
    std::array<Expr, 4> zeta;
    for (int l = 0; l < 4; ++l) {
      if (l != al && l != be) zeta[l] = Expr(random_rational(rng));
    }
    const TwistSpec spec = TwistSpec::lie(sym("ik"), zeta, al, be);
    const RelationReport r = verify_minkowski_relations(build_twist(spec, M), probe_with(rng(), o.tol.symbolic, 50));
    for (const auto& c : r.entries) {
      const std::string where = spec_label(spec) + " [" + std::to_string(c.mu) + "," + std::to_string(c.nu) + "]";
      lie.structural(c.structural, where + " residual " + c.residual.str());
      lie_num.residual(c.numeric_residual, where);
    }
  }
  out.push_back(lie.result());
  out.push_back(lie_num.result());

  Check quad("starprod.minkowski_quadratic", 0);
  for (const auto& ix : {std::array<int, 4>{0, 1, 2, 3}, std::array<int, 4>{0, 2, 1, 3}, std::array<int, 4>{3, 1, 0, 2}}) {
    const TwistSpec spec = TwistSpec::quadratic(sym("xi"), ix[0], ix[1], ix[2], ix[3]);
    const RelationReport r = verify_minkowski_relations(build_twist(spec, M), probe_with(rng(), o.tol.symbolic, 10));
    quad.structural(r.anticommutators_classical, spec_label(spec) + " anticommutators");
    for (const auto& c : r.entries) quad.structural(c.passed(), spec_label(spec) + " residual " + c.residual.str());
  }
  out.push_back(quad.result());

  // Hand-applied Rindler formula with hand-typed f0, f1.
  Check rind("starprod.rindler_canonical_formula", 0);
  {
    const Expr a = sym("a");
    const Expr z0 = sym("z0");
    const Expr z1 = sym("z1");
    const std::array<DiffOp, 4> f{
        DiffOp::derivative(R, 1, -I() * sinh(a * z0)) + DiffOp::derivative(R, 0, I() * cosh(a * z0) / (a * z1)),
        DiffOp::derivative(R, 1, I() * cosh(a * z0)) + DiffOp::derivative(R, 0, -I() * sinh(a * z0) / (a * z1)),
        DiffOp::derivative(R, 2, I()), DiffOp::derivative(R, 3, I())};
    ExprMatrix4 theta;
    const char* names[] = {"t01", "t02", "t03", "t12", "t13", "t23"};
    int n = 0;
    for (int m = 0; m < 4; ++m) {
      for (int k = m + 1; k < 4; ++k) {
        theta[m][k] = sym(names[n++]);
        theta[k][m] = -theta[m][k];
      }
    }
    const CommutatorTable t = build_table(build_twist(TwistSpec::canonical(theta), R));
    for (const auto& [key, v] : t.entries) {
      std::vector<Expr> terms;
      const Expr zm = R.coordinate(key.first);
      const Expr zn = R.coordinate(key.second);
      for (int rho = 0; rho < 4; ++rho) {
        for (int tau = 0; tau < 4; ++tau) {
          terms.push_back(theta[rho][tau] * (f[rho].apply(zm) * f[tau].apply(zn) - f[tau].apply(zm) * f[rho].apply(zn)));
        }
      }
      const Expr expected = simplify(Expr(ComplexRational(Rational{0}, Rational(-1, 2))) * Expr::sum(terms));
      rind.structural(v == expected, "[" + std::to_string(key.first) + "," + std::to_string(key.second) + "] " + v.str());
    }
    rind.structural(t.at(2, 3) == simplify(I() * theta[2][3]), "[2,3] " + t.at(2, 3).str());
  }
  out.push_back(rind.result());

  Check anti("starprod.antisymmetry", 0);
  Check leib("starprod.leibniz", 0);
  Check classical("starprod.classical_limit", 0);
  Check consistent("starprod.rindler_minkowski_consistency", 0);
  const auto subs = RindlerMap{}.substitution();
  const std::map<std::string, Expr> off{{"theta", Expr{0}}, {"ik", Expr{0}}, {"xi", Expr{0}}};
  const std::vector<Expr> monomials{R.coordinate(0), R.coordinate(1) * R.coordinate(2), pow(R.coordinate(3), 2)};
  for (const auto& spec : symbolic_specs()) {
    const LinearTwist tw = build_twist(spec, R);
    const std::string label = spec_label(spec);
    for (int k = 0; k < 3; ++k) {
      const Expr f = random_expr(rng, rindler_polys(3));
      const Expr g = random_expr(rng, rindler_polys(3));
      anti.structural(commutator(f, g, tw) == simplify(-commutator(g, f, tw)), label + " " + f.str() + " | " + g.str());
    }
    for (const auto& f : monomials) {
      for (const auto& g : monomials) {
        const Expr h = R.coordinate(1) * R.coordinate(3);
        leib.structural(
            simplify(commutator(f * g, h, tw) - f * commutator(g, h, tw) - commutator(f, h, tw) * g).is_zero(),
            label + " " + f.str() + ", " + g.str());
      }
    }
    for (const auto& chart : {M, R}) {
      for (const auto& [key, v] : build_table(build_twist(spec, chart)).entries) {
        classical.structural(substitute(v, off).is_zero(), label + " " + chart.name());
      }
      for (const auto& [key, v] : build_table(build_twist(spec.classical(), chart)).entries) {
        classical.structural(v.is_zero(), label + " " + chart.name());
      }
    }
    const CommutatorTable mt = build_table(build_twist(spec, M));
    for (const auto& [key, v] : mt.entries) {
      consistent.structural(commutator(substitute(M.coordinate(key.first), subs),
                                       substitute(M.coordinate(key.second), subs), tw) == substitute(v, subs),
                            label + " [" + std::to_string(key.first) + "," + std::to_string(key.second) + "]");
    }
  }
  const TwistSpec t23 = TwistSpec::canonical(2, 3, sym("theta"));
  consistent.structural(build_table(build_twist(t23, R)).at(2, 3) == build_table(build_twist(t23, M)).at(2, 3),
                        "transverse canonical entry");
  out.push_back(anti.result());
  out.push_back(leib.result());
  out.push_back(classical.result());
  out.push_back(consistent.result());
}

// ---- spectrum -----------------------------------------------------------

void spectrum_suite(const VerifyOptions& o, std::mt19937_64& rng, std::vector<CheckResult>& out) {
  const auto grid = log_grid(0.1, 5.0, 20);
  std::uniform_real_distribution<double> accel(0.2, 8.0);

  Check gamma("spectrum.gamma_modulus", o.tol.gamma);
  for (double y : grid) {
    gamma.residual(std::abs(std::norm(complex_gamma({0.0, y})) - pi / (y * std::sinh(pi * y))) /
                       (pi / (y * std::sinh(pi * y))),
                   "omega/a = " + std::to_string(y));
  }
  out.push_back(gamma.result());

  Check planck("spectrum.planck_equivalence", o.tol.planck);
  for (double wz : {0.5, 1.0, 3.0}) {
    const double a = accel(rng);
    for (double r : grid) {
      const PowerSpectrum p = power_spectrum({wz, 1.0, a, r * a});
      planck.residual(std::abs(p.from_amplitude - p.planck) / p.planck,
                      "omega_hat z = " + std::to_string(wz) + ", omega/a = " + std::to_string(r));
    }
  }
  out.push_back(planck.result());

  Check oracle("spectrum.oracle_agreement", o.tol.quadrature);
  Check converged("spectrum.quadrature_converged", 0);
  const double a = accel(rng);
  for (double r : {0.5, 1.0, 2.0}) {
    const ModeParams m{1.0, 1.0, a, r * a};
    const QuadratureResult q = f_quadrature(m, o.quad);
    oracle.residual(rel(q.value, f_closed(m)), "omega/a = " + std::to_string(r));
    converged.structural(q.converged, "omega/a = " + std::to_string(r));
    const ModeParams neg{1.0, 1.0, a, -r * a};
    const QuadratureResult i1 = shifted_integral_quadrature(neg, o.quad);
    oracle.residual(rel(i1.value, shifted_integral_closed(neg)), "shifted, omega/a = " + std::to_string(r));
    converged.structural(i1.converged, "shifted, omega/a = " + std::to_string(r));
  }
  out.push_back(oracle.result());
  out.push_back(converged.result());

  Check shift("spectrum.deformed_closed_shift", o.tol.deformed_closed);
  Check fd("spectrum.deformed_consistency", o.tol.deformed_fd);
  for (double theta : {1e-4, -1e-4}) {
    for (double w : {0.5, 1.0, 2.0}) {
      const ModeParams m{1.0, 1.0, 2.0 * pi, w};
      const DeformedPower p = deformed_power(m, {theta});
      const double t = hawking_temperature(m.a);
      const double expected = -2.0 * theta * w / (pi * t * m.z * m.z);
      const std::string where = "theta01 = " + std::to_string(theta) + ", omega = " + std::to_string(w);
      shift.residual(std::abs((p.closed - p.planck) / p.planck - expected) / std::abs(expected), where);
      shift.residual(std::abs((p.amplitude - p.planck) / p.planck - expected) / std::abs(expected), where);
      const ModeParams neg{1.0, 1.0, 2.0 * pi, -w};
      const double up = w * std::norm(deformed_f_theta(neg, {theta}));
      const double dn = w * std::norm(deformed_f_theta(neg, {-theta}));
      const double measured = (up - dn) / (2.0 * theta) * theta / p.planck;
      fd.residual(std::abs(measured - expected) / std::abs(expected), where);
    }
  }
  out.push_back(shift.result());
  out.push_back(fd.result());
}

// ---- rindler ------------------------------------------------------------

void rindler_suite(const VerifyOptions& o, std::mt19937_64& rng, std::vector<CheckResult>& out) {
  Check trip("rindler.round_trip", o.tol.geometry);
  std::uniform_real_distribution<double> tau(-2.0, 2.0);
  std::uniform_real_distribution<double> zeta(0.1, 5.0);
  std::uniform_real_distribution<double> acc(0.05, 3.0);
  for (int k = 0; k < 500; ++k) {
    const double a = acc(rng);
    const std::array<double, 4> z{tau(rng) / a, zeta(rng), tau(rng), tau(rng)};
    const auto back = minkowski_to_rindler(rindler_to_minkowski(z, a), a);
    for (int mu = 0; mu < 4; ++mu) {
      trip.residual(std::abs(back[mu] - z[mu]) / (1.0 + std::abs(z[mu])), "sample " + std::to_string(k));
    }
  }
  out.push_back(trip.result());

  Check metric("rindler.metric_pullback", 0);
  const Expr a = sym("a");
  const Expr z1 = sym("z1");
  for (const Expr& n : {z1, 2 * z1 + pow(z1, 3)}) {
    const ExprMat4 g = RindlerMap(n).metric_pullback();
    const Expr dn = differentiate(n, z1);
    const ExprVec4 expected{simplify(-pow(a, 2) * pow(n, 2)), simplify(pow(dn, 2)), Expr{1}, Expr{1}};
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        metric.structural(g[mu][nu] == (mu == nu ? expected[mu] : Expr{0}),
                          "N = " + n.str() + ", g" + std::to_string(mu) + std::to_string(nu) + " = " + g[mu][nu].str());
      }
    }
  }
  out.push_back(metric.result());
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["tolerances"] = {{"symbolic", tolerances.symbolic},
                     {"gamma", tolerances.gamma},
                     {"planck", tolerances.planck},
                     {"quadrature", tolerances.quadrature},
                     {"deformed_closed", tolerances.deformed_closed},
                     {"deformed_fd", tolerances.deformed_fd},
                     {"geometry", tolerances.geometry}};
  j["passed"] = passed();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e{{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"tolerance", c.tolerance}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << std::string(width - c.name.size(), ' ') << "  measured "
        << c.measured << "  tolerance " << c.tolerance;
    if (!c.detail.empty()) out << "  at " << c.detail;
    out << "\n";
  }
  out << (passed() ? "all checks passed" : "some checks failed") << "\n";
  return out.str();
}

VerifyReport run_verify(const VerifyOptions& opts) {
  VerifyReport report;
  report.seed = opts.seed;
  report.tolerances = opts.tol;
  using Suite = void (*)(const VerifyOptions&, std::mt19937_64&, std::vector<CheckResult>&);
  const Suite suites[] = {expr_suite, diffop_suite, twists_suite, starprod_suite, spectrum_suite, rindler_suite};
  std::uint64_t k = 0;
  for (Suite s : suites) {
    // One generator per suite so that suites stay independent of each other.
    std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ULL + (++k));
    s(opts, rng, report.checks);
  }
  return report;
}

}  // namespace twr
