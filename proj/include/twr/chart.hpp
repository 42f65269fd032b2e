#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "twr/expr.hpp"

namespace twr {

enum class ChartKind { Minkowski, Rindler };

/// Four-dimensional coordinate chart with signature (-,+,+,+).
///
/// Minkowski uses x0..x3 (x0 is the time coordinate t); Rindler uses z0..z3
/// (z0 is the Rindler time tau, z1 the spatial coordinate z) and carries the
/// acceleration symbol. Coordinate symbols denote contravariant components.
class Chart {
 public:
  static Chart minkowski();
  static Chart rindler(std::string acceleration = "a");
  /// "minkowski" or "rindler"; throws std::invalid_argument otherwise.
  static Chart from_name(const std::string& name);

  ChartKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Expr& coordinate(int mu) const;
  const std::string& coordinate_name(int mu) const;
  std::optional<int> index_of(const std::string& symbol) const;
  /// Throws std::logic_error on the Minkowski chart.
  const Expr& acceleration() const;

  /// Metric diagonal eta_{mu mu}.
  static int eta(int mu) { return mu == 0 ? -1 : 1; }

  friend bool operator==(const Chart& a, const Chart& b) { return a.kind_ == b.kind_ && a.accel_ == b.accel_; }

 private:
  Chart(ChartKind kind, std::string name, std::string prefix, std::optional<Expr> accel);

  ChartKind kind_;
  std::string name_;
  std::array<std::string, 4> names_;
  std::array<Expr, 4> coords_;
  std::optional<Expr> accel_;
};

class ChartMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws ChartMismatch when `e` mentions a coordinate of a chart other than
/// `chart` (x-coordinates on the Rindler chart or z-coordinates on Minkowski).
void check_chart(const Chart& chart, const Expr& e);

}  // namespace twr
