#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "twr/random_expr.hpp"
#include "twr/twists.hpp"

using namespace twr;

namespace {

const Expr a = sym("a");
const Expr z0 = sym("z0");
const Expr z1 = sym("z1");
const Expr z2 = sym("z2");
const Expr z3 = sym("z3");
const Chart R = Chart::rindler();
const Chart M = Chart::minkowski();

std::map<std::string, std::string> parse_lines(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    kv[line.substr(0, eq - 1)] = line.substr(eq + 2);
  }
  return kv;
}

std::vector<TwistSpec> sample_specs() {
  ExprMatrix4 theta;
  const char* names[4][4] = {{"", "t01", "t02", "t03"}, {"", "", "t12", "t13"}, {"", "", "", "t23"}, {"", "", "", ""}};
  for (int m = 0; m < 4; ++m) {
    for (int n = m + 1; n < 4; ++n) {
      theta[m][n] = sym(names[m][n]);
      theta[n][m] = -sym(names[m][n]);
    }
  }
  return {TwistSpec::canonical(theta),
          TwistSpec::lie(sym("ik"), {Expr{0}, Expr{0}, sym("s2"), sym("s3")}, 0, 1),
          TwistSpec::lie(sym("ik"), {sym("s0"), Expr{0}, Expr{0}, Expr{1}}, 1, 2),
          TwistSpec::quadratic(sym("xi"), 0, 1, 2, 3),
          TwistSpec::quadratic(sym("xi"), 0, 2, 1, 3)};
}

}  // namespace

TEST_CASE("twist spec: validation", "[twists]") {
  ExprMatrix4 bad;
  bad[0][1] = Expr{1};
  bad[1][0] = Expr{1};
  CHECK_THROWS_AS(TwistSpec::canonical(bad), std::invalid_argument);
  CHECK_THROWS_AS(TwistSpec::canonical(0, 0, Expr{1}), std::invalid_argument);
  CHECK_THROWS_AS(TwistSpec::canonical(0, 1, z1), std::invalid_argument);
  CHECK_THROWS_AS(TwistSpec::lie(Expr{1}, {Expr{1}, Expr{0}, Expr{0}, Expr{0}}, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(TwistSpec::lie(Expr{1}, {Expr{0}, Expr{0}, Expr{1}, Expr{0}}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(TwistSpec::lie(Expr{1}, {Expr{0}, Expr{0}, Expr{1}, Expr{0}}, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(TwistSpec::quadratic(Expr{1}, 0, 1, 1, 3), std::invalid_argument);
  CHECK_NOTHROW(TwistSpec::lie(Expr{1}, {Expr{0}, Expr{0}, Expr{1}, Expr{2}}, 0, 1));
  CHECK(TwistSpec::canonical(2, 3, Expr{1}).canonical_params().theta[3][2] == Expr{-1});
}

TEST_CASE("twist spec: config block round trip and errors", "[twists][config]") {
  for (const auto& spec : sample_specs()) {
    INFO(spec.to_config());
    CHECK(parse_twist_block(parse_lines(spec.to_config())) == spec);
  }
  CHECK(parse_twist_block({{"kind", "canonical"}, {"theta23", "1/2"}}) == TwistSpec::canonical(2, 3, Expr(Rational(1, 2))));
  CHECK_THROWS_AS(parse_twist_block({{"kind", "canonical"}, {"theta32", "1"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_twist_block({{"kind", "moyal"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_twist_block({{"theta01", "1"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_twist_block({{"kind", "lie"}, {"inv_kappa", "1"}, {"zeta", "0,0,1"}, {"alpha", "0"}, {"beta", "1"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_twist_block({{"kind", "quadratic"}, {"xi", "1"}, {"alpha", "0"}, {"beta", "1"}, {"gamma", "2"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_twist_block({{"kind", "quadratic"}, {"xi", "1"}, {"alpha", "x"}, {"beta", "1"}, {"gamma", "2"}, {"delta", "3"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_twist_block({{"kind", "canonical"}, {"theta01", "(1"}}), std::invalid_argument);
}

TEST_CASE("twists: generators on both charts", "[twists]") {
  CHECK(translation_generator(M, 1) == momentum(1));
  CHECK(translation_generator(R, 2) == DiffOp::derivative(R, 2, I()));
  CHECK(translation_generator(R, 0).str() == "-sinh(a*z0)*i*d/dz1 + (cosh(a*z0)/(a*z1))*i*d/dz0");
  CHECK(lorentz_generator(R, 0, 1) == DiffOp::derivative(R, 0, -I() / a));
  const Chart Rb = Chart::rindler("b");
  CHECK(lorentz_generator(Rb, 0, 1) == DiffOp::derivative(Rb, 0, -I() / sym("b")));
}

TEST_CASE("twists: transverse canonical twist on the Rindler chart", "[twists]") {
  const Expr t = sym("theta23");
  const LinearTwist tw = canonical_twist_linear(TwistSpec::canonical(2, 3, t).canonical_params().theta, R);
  const BidiffOp expected =
      wedge(DiffOp::derivative(R, 2, I()), DiffOp::derivative(R, 3, I())).scaled(twist_normalization() * t);
  CHECK(tw.op == expected);
  CHECK(tw.op.apply(z2, z3) == simplify(I() * t / 2));
}

TEST_CASE("twists: undeformed limits give the zero operator", "[twists]") {
  for (const auto& chart : {M, R}) {
    CHECK(canonical_twist_linear(ExprMatrix4{}, chart).op.is_zero());
    CHECK(lie_twist_linear(Expr{0}, {Expr{0}, Expr{0}, Expr{1}, Expr{0}}, 0, 1, chart).op.is_zero());
    CHECK(quadratic_twist_linear(Expr{0}, 0, 1, 2, 3, chart).op.is_zero());
    for (const auto& spec : sample_specs()) CHECK(build_twist(spec.classical(), chart).op.is_zero());
  }
}

TEST_CASE("twists: chart consistency", "[twists][property]") {
  for (const auto& spec : sample_specs()) {
    INFO(spec.to_config());
    CHECK(build_twist(spec, M).op.pulled_back() == build_twist(spec, R).op);
  }
}

TEST_CASE("twists: constants are annihilated and parameters enter linearly", "[twists][property]") {
  std::mt19937_64 rng(99);
  RandomExprOptions opts;
  opts.max_depth = 4;
  opts.inverse_powers = false;
  opts.symbols = {"z0", "z1", "z2", "z3", "a"};
  for (const auto& spec : sample_specs()) {
    const LinearTwist tw = build_twist(spec, R);
    const LinearTwist tw3 = build_twist(spec.scaled(Expr{3}), R);
    for (int k = 0; k < 6; ++k) {
      const Expr f = random_expr(rng, opts);
      const Expr g = random_expr(rng, opts);
      INFO(spec.to_config() << f.str() << " | " << g.str());
      CHECK(tw.op.apply(Expr{1}, g).is_zero());
      CHECK(tw.op.apply(f, Expr(Rational(7, 3))).is_zero());
      CHECK(tw3.op.apply(f, g) == simplify(3 * tw.op.apply(f, g)));
    }
  }
}
