#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "json.hpp"
#include "twr/spectrum.hpp"
#include "twr/twists.hpp"

using namespace twr;

namespace {

constexpr double pi = 3.14159265358979323846;

double rel(cplx x, cplx y) { return std::abs(x - y) / std::abs(y); }
double rel(double x, double y) { return std::abs(x - y) / std::abs(y); }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
  return g;
}

}  // namespace

TEST_CASE("complex_gamma: standard values and real axis", "[spectrum][gamma]") {
  CHECK(rel(complex_gamma(1.0), cplx(1.0)) < 1e-14);
  CHECK(rel(complex_gamma(0.5), cplx(std::sqrt(pi))) < 1e-14);
  CHECK(std::abs(complex_gamma(0.5).real() - 1.7724538509) < 1e-10);
  double fact = 1.0;
  for (int n = 1; n < 20; ++n) {
    CHECK(rel(complex_gamma(static_cast<double>(n)), cplx(fact)) < 1e-13);
    fact *= n;
  }
  for (double x = -4.75; x < 12.0; x += 0.37) {
    INFO(x);
    CHECK(rel(complex_gamma(x), cplx(std::tgamma(x))) < 1e-13);
  }
  CHECK_THROWS_AS(complex_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(complex_gamma(-3.0), std::domain_error);
  CHECK_NOTHROW(complex_gamma(cplx(-3.0, 1e-9)));
}

TEST_CASE("complex_gamma: reference values off the real axis", "[spectrum][gamma]") {
  // 30-digit reference values.
  CHECK(rel(complex_gamma({0.3, 2.0}), {0.05746533756958803346, -0.074984912582646138176}) < 1e-13);
  CHECK(rel(complex_gamma({-1.7, 0.4}), {1.1356438824316395205, -0.26890799072916941431}) < 1e-13);
  CHECK(rel(complex_gamma({5.0, -30.0}), {-3.768008854854723025e-14, 8.8146477058955159236e-15}) < 1e-12);
  CHECK(rel(complex_gamma({0.5, 45.0}), {4.0346417527092846094e-31, 2.9853946305335835771e-31}) < 1e-12);
}

TEST_CASE("complex_gamma: modulus identities on the strip |Im s| <= 50", "[spectrum][gamma][property]") {
  CHECK(std::abs(std::norm(complex_gamma({0.0, 1.0})) - 0.2720290550) < 1e-10);
  for (double y : log_grid(0.1, 5.0, 20)) {
    INFO(y);
    CHECK(rel(std::norm(complex_gamma({0.0, y})), pi / (y * std::sinh(pi * y))) <= 1e-12);
  }
  for (double y = 0.5; y <= 50.0; y += 2.5) {
    INFO(y);
    CHECK(rel(std::norm(complex_gamma({0.5, y})), pi / std::cosh(pi * y)) <= 1e-12);
    CHECK(rel(std::norm(complex_gamma({0.0, y})), pi / (y * std::sinh(pi * y))) <= 1e-12);
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-6.0, 6.0);
  std::uniform_real_distribution<double> im(-50.0, 50.0);
  for (int k = 0; k < 200; ++k) {
    const cplx s(re(rng), im(rng));
    INFO(s);
    CHECK(rel(complex_gamma(s + 1.0), s * complex_gamma(s)) <= 1e-12);
    CHECK(rel(complex_gamma(std::conj(s)), std::conj(complex_gamma(s))) <= 1e-14);
  }
}

TEST_CASE("hawking_temperature", "[spectrum]") {
  CHECK(hawking_temperature(2.0 * pi) == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(hawking_temperature(1.0) == Catch::Approx(0.1591549431).epsilon(1e-10));
  CHECK(hawking_temperature(3.4) == Catch::Approx(2.0 * hawking_temperature(1.7)).epsilon(1e-15));
  CHECK_THROWS_AS(hawking_temperature(0.0), std::invalid_argument);
}

TEST_CASE("f_closed: moduli and Planck form", "[spectrum]") {
  CHECK_THROWS_AS(f_closed({1.0, 1.0, 1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(f_closed({1.0, -1.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(f_closed({1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
  // |f(omega)|^2 at omega/a = 1 combines |Gamma(-i)|^2 = pi/sinh(pi) with e^{pi}.
  for (double a : {0.5, 1.0, 3.0}) {
    const double expected = (1.0 / (a * a)) * pi / std::sinh(pi) * std::exp(pi);
    CHECK(rel(std::norm(f_closed({1.0, 1.0, a, a})), expected) < 1e-12);
    CHECK(rel(std::norm(f_closed({2.7, 0.4, a, a})), expected) < 1e-12);
  }
  CHECK(std::abs(planck_power(1.0, 2.0 * pi) - 0.5819767069) < 1e-10);
  CHECK(std::abs(power_spectrum({1.0, 1.0, 2.0 * pi, 1.0}).from_amplitude - 0.5819767069) < 1e-10);
  CHECK(planck_power(200.0, 1.0) < 1e-300);
  CHECK_THROWS_AS(power_spectrum({1.0, 1.0, 1.0, -1.0}), std::invalid_argument);
  for (double wz : {0.5, 1.0, 3.0}) {
    for (double a : {1.0, 2.0 * pi}) {
      for (double r : log_grid(0.1, 5.0, 20)) {
        const PowerSpectrum p = power_spectrum({wz, 1.0, a, r * a});
        INFO(wz << " " << a << " " << r);
        CHECK(rel(p.from_amplitude, p.planck) <= 1e-10);
        CHECK(rel(p.planck, (1.0 / hawking_temperature(a)) / std::expm1(r * a / hawking_temperature(a))) <= 1e-13);
      }
    }
  }
}

TEST_CASE("f_quadrature: oracle agreement", "[spectrum][quadrature]") {
  for (double r : {0.5, 1.0, 2.0}) {
    for (double sign : {1.0, -1.0}) {
      const ModeParams m{1.0, 1.0, 1.3, sign * r * 1.3};
      const QuadratureResult q = f_quadrature(m);
      INFO(r << " " << sign << " error " << q.error);
      CHECK(q.converged);
      CHECK(rel(q.value, f_closed(m)) <= 1e-6);
      CHECK(q.error <= 1e-6 * std::abs(q.value));
      CHECK(q.eps_min == Catch::Approx(0.1 / 128));
    }
    // |f(omega)| / |f(-omega)| = e^{pi omega/a}, read off the quadrature alone.
    const double ratio = std::abs(f_quadrature({1.0, 1.0, 1.0, r}).value) / std::abs(f_quadrature({1.0, 1.0, 1.0, -r}).value);
    CHECK(rel(ratio, std::exp(pi * r)) <= 1e-6);
  }
  CHECK_THROWS_AS(f_quadrature({1.0, 1.0, 1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(damped_mellin({0.0, -1.0}, 1.0, 0.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(mellin_extrapolated({0.0, -1.0}, 1.0, {0.1, 1, 16, 1e-8}), std::invalid_argument);
}

TEST_CASE("damped_mellin: closed form at fixed damping and panel refinement", "[spectrum][quadrature]") {
  // With damping the integral is Gamma(s + eps) (eps - i q)^{-(s + eps)} on the principal branch.
  for (double eps : {0.3, 0.05}) {
    const cplx s(0.0, -0.8);
    const double q = 1.7;
    const cplx exact = complex_gamma(s + eps) * std::exp(-(s + eps) * std::log(cplx(eps, -q)));
    const QuadratureResult d = damped_mellin(s, q, eps, 4096);
    CHECK(rel(d.value, exact) < 1e-11);
  }
  double last = INFINITY;
  for (int panels = 2; panels <= 32; panels *= 2) {
    const double e = damped_mellin({0.0, -1.0}, 1.0, 0.25, panels).error;
    INFO(panels << " " << e);
    CHECK(e < last);
    last = e;
  }
}

TEST_CASE("shifted integral: quadrature against the Gamma closed form", "[spectrum][quadrature]") {
  for (double r : {0.5, 1.0, 2.0}) {
    for (double wz : {0.5, 2.0}) {
      const ModeParams m{wz, 1.0, 2.0, -2.0 * r};
      const QuadratureResult q = shifted_integral_quadrature(m);
      CHECK(q.converged);
      CHECK(rel(q.value, shifted_integral_closed(m)) <= 1e-6);
      // Gamma(y + 1) = y Gamma(y): I1 = f omega / (a omega_hat z).
      CHECK(rel(shifted_integral_closed(m), f_closed(m) * m.omega / (m.a * m.omega_hat * m.z)) < 1e-12);
    }
  }
}

TEST_CASE("deformed amplitude and power", "[spectrum][deformed]") {
  const ModeParams m{1.0, 1.0, 2.0 * pi, 1.0};
  CHECK(deformed_f_theta(m, {0.0}) == f_closed(m));
  const DeformedPower p0 = deformed_power(m, {0.0});
  CHECK(rel(p0.closed, p0.planck) < 1e-15);
  CHECK(rel(p0.amplitude, p0.planck) < 1e-10);

  for (double theta : {1e-4, -1e-4}) {
    for (double w : {0.5, 1.0, 2.0}) {
      const ModeParams mw{1.0, 1.0, 2.0 * pi, w};
      const DeformedPower p = deformed_power(mw, {theta});
      const double t = hawking_temperature(mw.a);
      const double expected = -2.0 * theta * w / (pi * t);
      CHECK(std::abs((p.closed - p.planck) / p.planck - expected) <= 1e-6 * std::abs(expected));
      CHECK(std::abs((p.amplitude - p.planck) / p.planck - expected) <= 1e-6 * std::abs(expected));
      CHECK_FALSE(p.outside_linear_regime);
      // Positive theta01 suppresses.
      CHECK((theta > 0) == (p.closed < p.planck));
    }
  }
  CHECK(deformed_power({1.0, 0.1, 2.0 * pi, 1.0}, {1e-2}).outside_linear_regime);
}

TEST_CASE("deformed amplitude: finite-difference theta derivative", "[spectrum][deformed][property]") {
  const double h = 1e-6;
  for (double w : {0.5, 1.0, 2.0}) {
    for (double z : {1.0, 1.5}) {
      const ModeParams neg{0.8, z, 2.0 * pi, -w};
      const ModeParams pos{0.8, z, 2.0 * pi, w};
      const double up = w * std::norm(deformed_f_theta(neg, {h}));
      const double dn = w * std::norm(deformed_f_theta(neg, {-h}));
      const double derivative = (up - dn) / (2.0 * h);
      const double t = hawking_temperature(pos.a);
      const double closed_derivative = (1.0 / t) / std::expm1(w / t) * (-2.0 * w / (pi * t * z * z));
      INFO(w << " " << z);
      CHECK(rel(derivative, closed_derivative) <= 1e-6);
    }
  }
}

TEST_CASE("deformed amplitude: quadrature route", "[spectrum][deformed][quadrature]") {
  for (double w : {0.5, 2.0}) {
    const DeformedAmplitudeCheck c = deformed_f_theta_quadrature({1.0, 1.0, 1.0, -w}, {1e-2});
    CHECK(c.f.converged);
    CHECK(c.shifted.converged);
    CHECK(rel(c.quadrature, c.closed) <= 1e-6);
  }
}

TEST_CASE("engine operator reproduces the spectral correction integrands", "[spectrum][twists]") {
  // The spectral formulas use the exponent -2i theta^{01} f0 ^ f1, the engine
  // uses -(i/2) theta^{01} f0 ^ f1, so engine theta = 4 * spectral theta.
  const Expr tp = sym("tp");
  const Expr wh = sym("wh");
  const Expr w = sym("w");
  const Expr a = sym("a");
  const Expr z0 = sym("z0");
  const Expr z1 = sym("z1");
  const LinearTwist tw = build_twist(TwistSpec::canonical(0, 1, 4 * tp), Chart::rindler());
  const Expr field = exp(I() * wh * z1 * exp(-a * z0));
  const Expr wave = exp(I() * w * z0);
  CHECK(tw.op.apply(field, wave) == simplify(2 * I() * tp * w * wh * exp(-a * z0) / (a * z1) * field * wave));
  CHECK(tw.op.apply(I() * wh * z1, exp(-a * z0)) == simplify(-2 * tp * wh * exp(-a * z0) / z1));
}

TEST_CASE("compute_spectrum: rows, exports and errors", "[spectrum][io]") {
  SpectrumRequest req;
  req.a = 2.0 * pi;
  req.omegas = {0.5, 1.0, 2.0};
  req.quadrature = true;
  req.theta01 = 1e-3;
  const SpectrumResult r = compute_spectrum(req);
  REQUIRE(r.rows.size() == 6);
  CHECK(r.all_converged());
  for (const auto& row : r.rows) {
    CHECK(rel(row.power, 1.0 / std::expm1(row.omega)) <= 1e-6);
    CHECK(rel(row.power_deformed, 1.0 / std::expm1(row.omega) * (1.0 - 2.0 * 1e-3 * row.omega / pi)) <= 1e-6);
    CHECK(row.power >= 0.0);
  }
  CHECK(r.rows[0].method == SpectrumMethod::ClosedForm);
  CHECK(r.rows[1].method == SpectrumMethod::Quadrature);
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("omega,re_f,im_f,power,power_deformed,method,eps,converged\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  const auto j = nlohmann::json::parse(r.to_json(R"({"seed": 7})"));
  CHECK(j["metadata"]["seed"] == 7);
  CHECK(j["rows"].size() == 6);
  CHECK(j["rows"][1]["method"] == "quadrature");
  CHECK(r.to_json() == compute_spectrum(req).to_json());

  req.omegas.clear();
  CHECK_THROWS_AS(compute_spectrum(req), std::invalid_argument);
  req.omegas = {-1.0};
  CHECK_THROWS_AS(compute_spectrum(req), std::invalid_argument);
}
