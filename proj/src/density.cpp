#include "sldp/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sldp {

namespace {

// 8-point Gauss-Legendre on [-1, 1]
constexpr double kGlNodes[4] = {0.183434642495649804939476142360184,
                                0.525532409916328985817739049189246,
                                0.796666477413626739591553936475831,
                                0.960289856497536231683560868569473};
constexpr double kGlWeights[4] = {0.362683783378361982965150449277196,
                                  0.313706645877887287337962201986601,
                                  0.222381034453374470544355994426241,
                                  0.101228536290376259152531401739064};

}  // namespace

DensityCurve::DensityCurve(Interval support, std::function<double(double)> density,
                           std::size_t grid_points)
    : support_(support), density_(std::move(density)) {
  grid_.reserve(grid_points);
  values_.reserve(grid_points);
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double theta = (k + 0.5) * std::numbers::pi / (2.0 * grid_points);
    const double s = std::sin(theta);
    const double x = support_.lo + support_.width() * s * s;
    grid_.push_back(x);
    values_.push_back(density_(x));
  }
}

DensityCurve DensityCurve::tabulated(std::vector<double> grid, std::vector<double> values) {
  if (grid.size() < 2 || grid.size() != values.size())
    throw std::invalid_argument("tabulated density needs matching grid/values of length >= 2");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("tabulated density grid must be increasing");
  DensityCurve curve;
  curve.support_ = {grid.front(), grid.back()};
  curve.grid_ = std::move(grid);
  curve.values_ = std::move(values);
  curve.density_ = [xs = curve.grid_, ys = curve.values_](double x) {
    if (x < xs.front() || x > xs.back()) return 0.0;
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return ys.back();
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return (1.0 - t) * ys[lo] + t * ys[hi];
  };
  return curve;
}

QuadResult DensityCurve::integrate(const std::function<double(double)>& g,
                                   const QuadOptions& opts) const {
  return integrate_sqrt_endpoints([&](double x) { return g(x) * density_(x); }, support_.lo,
                                  support_.hi, opts);
}

double DensityCurve::mass() const {
  return integrate([](double) { return 1.0; }).value;
}

double DensityCurve::moment(int k) const {
  return integrate([k](double x) { return std::pow(x, k); }).value;
}

CdfTable::CdfTable(const DensityCurve& curve, std::size_t panels)
    : support_(curve.support()), step_(std::numbers::pi / 2 / panels) {
  cumulative_.assign(panels + 1, 0.0);
  const double a = support_.lo;
  const double width = support_.width();
  auto g = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return curve(a + width * s * s) * 2.0 * width * s * c;
  };
  for (std::size_t p = 0; p < panels; ++p) {
    const double center = (p + 0.5) * step_;
    const double half = 0.5 * step_;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i)
      sum += kGlWeights[i] * (g(center - half * kGlNodes[i]) + g(center + half * kGlNodes[i]));
    cumulative_[p + 1] = cumulative_[p] + sum * half;
  }
}

double CdfTable::operator()(double x) const {
  if (x <= support_.lo) return 0.0;
  if (x >= support_.hi) return cumulative_.back();
  const double u = std::clamp((x - support_.lo) / support_.width(), 0.0, 1.0);
  const double theta = std::asin(std::sqrt(u));
  const double pos = theta / step_;
  const std::size_t k = std::min(static_cast<std::size_t>(pos), cumulative_.size() - 2);
  const double t = pos - k;
  return (1.0 - t) * cumulative_[k] + t * cumulative_[k + 1];
}

}  // namespace sldp
