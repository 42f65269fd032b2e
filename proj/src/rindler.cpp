#include "twr/rindler.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "twr/probe.hpp"

namespace twr {

namespace {

using Square = std::vector<std::vector<Expr>>;

Expr det_rec(const Square& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  std::vector<Expr> terms;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    Square minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Expr> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    Expr sub = det_rec(minor);
    terms.push_back(Expr::product({Expr{col % 2 == 0 ? 1 : -1}, m[0][col], sub}));
  }
  return Expr::sum(std::move(terms));
}

Square to_square(const ExprMat4& m) {
  Square s(4);
  for (int r = 0; r < 4; ++r) s[r].assign(m[r].begin(), m[r].end());
  return s;
}

}  // namespace

Expr determinant(const ExprMat4& m) { return simplify(det_rec(to_square(m))); }

ExprMat4 inverse(const ExprMat4& m) {
  const Expr det = determinant(m);
  if (det.is_zero()) throw std::domain_error("singular matrix");
  const Expr inv_det = simplify(Expr::power(det, -1));
  ExprMat4 out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      // adj[r][c] = (-1)^(r+c) * minor(c, r)
      Square minor;
      for (int i = 0; i < 4; ++i) {
        if (i == c) continue;
        std::vector<Expr> row;
        for (int j = 0; j < 4; ++j) {
          if (j != r) row.push_back(m[i][j]);
        }
        minor.push_back(std::move(row));
      }
      const Expr cof = Expr::product({Expr{(r + c) % 2 == 0 ? 1 : -1}, det_rec(minor)});
      out[r][c] = simplify(cof * inv_det);
    }
  }
  return out;
}

RindlerMap::RindlerMap(Expr lapse, Expr acceleration) : lapse_(simplify(lapse)), accel_(std::move(acceleration)) {
  if (!accel_.is_symbol()) throw std::invalid_argument("acceleration must be a symbol");
  const Chart rindler = Chart::rindler(accel_.name());
  const Chart mink = Chart::minkowski();
  if (rindler.index_of(accel_.name()) || mink.index_of(accel_.name())) {
    throw std::invalid_argument("acceleration symbol clashes with a coordinate: " + accel_.name());
  }
  for (const auto& s : free_symbols(lapse_)) {
    if ((rindler.index_of(s) && s != "z1") || mink.index_of(s)) {
      throw std::invalid_argument("lapse N may depend on z1 only, found '" + s + "'");
    }
  }
  std::mt19937_64 rng(1);
  for (int k = 0; k < 16; ++k) {
    const auto v = eval_numeric(lapse_, sample_bindings(lapse_, rng));
    if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-14 * std::abs(v.real())) {
      throw std::invalid_argument("lapse N must be positive, got " + lapse_.str());
    }
  }
}

ExprVec4 RindlerMap::forward(const ExprVec4& z) const {
  const Expr n = substitute(lapse_, {{"z1", z[1]}});
  return {simplify(n * sinh(accel_ * z[0])), simplify(n * cosh(accel_ * z[0])), simplify(z[2]), simplify(z[3])};
}

std::map<std::string, Expr> RindlerMap::substitution() const {
  const Chart r = Chart::rindler(accel_.name());
  const ExprVec4 x = forward({r.coordinate(0), r.coordinate(1), r.coordinate(2), r.coordinate(3)});
  std::map<std::string, Expr> out;
  for (int mu = 0; mu < 4; ++mu) out.emplace("x" + std::to_string(mu), x[mu]);
  return out;
}

ExprMat4 RindlerMap::jacobian() const {
  const Chart r = Chart::rindler(accel_.name());
  const ExprVec4 x = forward({r.coordinate(0), r.coordinate(1), r.coordinate(2), r.coordinate(3)});
  ExprMat4 j;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) j[mu][nu] = differentiate(x[mu], r.coordinate(nu));
  }
  return j;
}

ExprMat4 RindlerMap::inverse_jacobian() const { return inverse(jacobian()); }

ExprMat4 RindlerMap::metric_pullback() const {
  const ExprMat4 j = jacobian();
  ExprMat4 g;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      std::vector<Expr> terms;
      for (int mu = 0; mu < 4; ++mu) terms.push_back(Expr::product({Expr{Chart::eta(mu)}, j[mu][a], j[mu][b]}));
      g[a][b] = simplify(Expr::sum(std::move(terms)));
    }
  }
  return g;
}

ExprVec4 RindlerMap::printed_metric() const {
  const Expr dn = differentiate(lapse_, sym("z1"));
  return {simplify(-accel_ * pow(lapse_, 2)), simplify(pow(dn, 2)), Expr{1}, Expr{1}};
}

std::array<double, 4> rindler_to_minkowski(const std::array<double, 4>& z, double a) {
  return {z[1] * std::sinh(a * z[0]), z[1] * std::cosh(a * z[0]), z[2], z[3]};
}

std::array<double, 4> minkowski_to_rindler(const std::array<double, 4>& x, double a) {
  if (!(x[1] > std::abs(x[0]))) throw std::domain_error("point outside the right Rindler wedge");
  return {std::atanh(x[0] / x[1]) / a, std::sqrt((x[1] - x[0]) * (x[1] + x[0])), x[2], x[3]};
}

}  // namespace twr
