#pragma once

#include <functional>
#include <vector>

#include "sldp/quadrature.hpp"
#include "sldp/types.hpp"

namespace sldp {

/// A density on a closed support, either analytic or interpolated from a table.
class DensityCurve {
 public:
  DensityCurve(Interval support, std::function<double(double)> density,
               std::size_t grid_points = 512);

  /// Piecewise-linear curve through (grid, values); zero outside the grid.
  static DensityCurve tabulated(std::vector<double> grid, std::vector<double> values);

  const Interval& support() const noexcept { return support_; }
  /// Strictly increasing abscissae, clustered towards the support edges.
  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double operator()(double x) const { return density_(x); }

  /// Integral of g(x) rho(x) over the support (sin^2 endpoint substitution).
  QuadResult integrate(const std::function<double(double)>& g, const QuadOptions& opts = {}) const;
  double mass() const;
  double moment(int k) const;

 private:
  DensityCurve() = default;

  Interval support_;
  std::function<double(double)> density_;
  std::vector<double> grid_;
  std::vector<double> values_;
};

/// Tabulated CDF of a DensityCurve on a theta grid (x = a + (b-a) sin^2 theta).
class CdfTable {
 public:
  explicit CdfTable(const DensityCurve& curve, std::size_t panels = 4096);

  double operator()(double x) const;
  double total() const noexcept { return cumulative_.back(); }

 private:
  Interval support_;
  double step_;
  std::vector<double> cumulative_;
};

}  // namespace sldp
