#include "twr/chart.hpp"

namespace twr {

Chart::Chart(ChartKind kind, std::string name, std::string prefix, std::optional<Expr> accel)
    : kind_(kind), name_(std::move(name)), accel_(std::move(accel)) {
  for (int mu = 0; mu < 4; ++mu) {
    names_[mu] = prefix + std::to_string(mu);
    coords_[mu] = Expr::symbol(names_[mu]);
  }
}

Chart Chart::minkowski() { return Chart(ChartKind::Minkowski, "minkowski", "x", std::nullopt); }

Chart Chart::rindler(std::string acceleration) {
  return Chart(ChartKind::Rindler, "rindler", "z", Expr::symbol(acceleration));
}

Chart Chart::from_name(const std::string& name) {
  if (name == "minkowski") return minkowski();
  if (name == "rindler") return rindler();
  throw std::invalid_argument("unknown chart '" + name + "' (expected minkowski or rindler)");
}

const Expr& Chart::coordinate(int mu) const {
  if (mu < 0 || mu > 3) throw std::out_of_range("coordinate index " + std::to_string(mu));
  return coords_[mu];
}

const std::string& Chart::coordinate_name(int mu) const {
  if (mu < 0 || mu > 3) throw std::out_of_range("coordinate index " + std::to_string(mu));
  return names_[mu];
}

std::optional<int> Chart::index_of(const std::string& symbol) const {
  for (int mu = 0; mu < 4; ++mu) {
    if (names_[mu] == symbol) return mu;
  }
  return std::nullopt;
}

const Expr& Chart::acceleration() const {
  if (!accel_) throw std::logic_error("the Minkowski chart has no acceleration parameter");
  return *accel_;
}

void check_chart(const Chart& chart, const Expr& e) {
  const Chart other = chart.kind() == ChartKind::Minkowski ? Chart::rindler() : Chart::minkowski();
  for (const auto& s : free_symbols(e)) {
    if (other.index_of(s)) {
      throw ChartMismatch("expression uses " + other.name() + " coordinate '" + s + "' on the " + chart.name() +
                          " chart");
    }
  }
}

}  // namespace twr
