#include "sldp/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sldp/analytics.hpp"

namespace sldp {

namespace {

constexpr double kPvExcision = 1e-4;
constexpr double kEdgeGuard = 1e-3;
constexpr double kFeasibilityTol = 1e-6;

QuadOptions tight(double tol = 1e-12) {
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.rel_tol = tol;
  opts.max_intervals = 20000;
  return opts;
}

}  // namespace

std::vector<double> Histogram::density() const {
  std::vector<double> out(bins(), 0.0);
  const double n = static_cast<double>(in_range());
  if (n == 0.0) return out;
  for (std::size_t k = 0; k < bins(); ++k) out[k] = counts[k] / (n * width(k));
  return out;
}

Histogram histogram(std::span<const double> samples, std::size_t n_bins, Interval range) {
  if (samples.empty()) throw DomainError("histogram of an empty sample");
  if (n_bins < 1) throw DomainError("histogram needs at least one bin");
  if (!(range.hi > range.lo)) throw DomainError("histogram range must be non-empty");
  Histogram h;
  h.edges.resize(n_bins + 1);
  const double w = range.width() / static_cast<double>(n_bins);
  for (std::size_t k = 0; k <= n_bins; ++k) h.edges[k] = range.lo + w * static_cast<double>(k);
  h.edges.back() = range.hi;
  h.counts.assign(n_bins, 0);
  h.total = samples.size();
  for (double x : samples) {
    if (x < range.lo) {
      ++h.underflow;
    } else if (x > range.hi) {
      ++h.overflow;
    } else {
      const auto k = std::min(static_cast<std::size_t>((x - range.lo) / w), n_bins - 1);
      ++h.counts[k];
    }
  }
  return h;
}

CurveDistance compare_density(const Histogram& h, const DensityCurve& curve) {
  CurveDistance d;
  const Interval s = curve.support();
  if (h.edges.back() <= s.lo || h.edges.front() >= s.hi) {
    d.l1 = d.l1_midpoint = 2.0;
    d.ks = 1.0;
    d.disjoint = true;
    return d;
  }
  const CdfTable cdf(curve);
  const double n = static_cast<double>(h.total);
  const double outside = static_cast<double>(h.underflow + h.overflow) / n;
  d.l1 = outside;
  d.l1_midpoint = outside;
  double empirical = static_cast<double>(h.underflow) / n;
  d.ks = std::abs(empirical - cdf(h.edges.front()));
  for (std::size_t k = 0; k < h.bins(); ++k) {
    const double p = h.counts[k] / n;
    const double mass = cdf(h.edges[k + 1]) - cdf(h.edges[k]);
    d.l1 += std::abs(p - mass);
    const double mid = curve(h.midpoint(k));
    const double mid_mass = std::isfinite(mid) ? mid * h.width(k) : mass;
    d.l1_midpoint += std::abs(p - mid_mass);
    empirical += p;
    d.ks = std::max(d.ks, std::abs(empirical - cdf(h.edges[k + 1])));
  }
  return d;
}

double ks_distance(std::span<const double> samples, const DensityCurve& curve) {
  if (samples.empty()) throw DomainError("ks_distance of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const CdfTable cdf(curve);
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double pv_saddle_residual(double zeta, double x) {
  const BarrierSpec wall = BarrierSpec::min_wall(zeta);
  const analytics::Multipliers mu = analytics::lagrange_multipliers(zeta);
  const Interval s = analytics::density_support(wall);
  if (!(x - s.lo > kEdgeGuard && s.hi - x > kEdgeGuard)) {
    std::ostringstream msg;
    msg << "pv_saddle_residual: x = " << x << " is within " << kEdgeGuard
        << " of the support edge";
    throw DomainError(msg.str());
  }
  auto rho = [&](double t) { return analytics::constrained_density(t, wall); };
  const double rho_x = rho(x);
  const double dh = 1e-5;
  const double slope = (rho(x + dh) - rho(x - dh)) / (2.0 * dh);

  // (rho(x') - rho(x)) / (x - x') is regular; inside the excision window its
  // limit -rho'(x) replaces the cancelling difference.
  auto regular = [&](double t) {
    if (std::abs(t - x) < kPvExcision) return -slope;
    return (rho(t) - rho_x) / (x - t);
  };
  const QuadOptions opts = tight(1e-11);
  const double left = integrate_sqrt_endpoints(regular, s.lo, x, opts).value;
  const double right = integrate_sqrt_endpoints(regular, x, s.hi, opts).value;
  const double pv = left + right + rho_x * std::log((x - s.lo) / (s.hi - x));
  return pv - mu.mu1;
}

double log_potential(const DensityCurve& curve, double x) {
  const Interval s = curve.support();
  const QuadOptions opts = tight(1e-12);
  if (x <= s.lo || x >= s.hi) {
    return curve.integrate([x](double t) { return std::log(std::abs(x - t)); }, opts).value;
  }
  const double da = x - s.lo;
  const double db = s.hi - x;
  // Subtract rho(x) ln|x - x'| and add back its closed-form integral. Right
  // at an inverse-square-root edge rho(x) is huge and the subtraction would
  // cancel catastrophically; there the split at x alone tames the log.
  const double rho_x = std::min(da, db) > 1e-6 * s.width() ? curve(x) : 0.0;
  auto g = [&](double t) {
    const double dist = std::abs(x - t);
    return dist > 0.0 ? (curve(t) - rho_x) * std::log(dist) : 0.0;
  };
  const double left = integrate_sqrt_endpoints(g, s.lo, x, opts).value;
  const double right = integrate_sqrt_endpoints(g, x, s.hi, opts).value;
  const double flat = da * std::log(da) + db * std::log(db) - s.width();
  return left + right + rho_x * flat;
}

double energy_functional(const DensityCurve& curve, double zeta) {
  std::vector<std::string> violated;
  const double mass = curve.mass();
  const double first = curve.moment(1);
  if (std::abs(mass - 1.0) > kFeasibilityTol) violated.push_back("normalization");
  if (std::abs(first - 1.0) > kFeasibilityTol) violated.push_back("unit first moment");
  if (curve.support().lo < zeta - 1e-12) violated.push_back("support below the wall");
  if (!violated.empty()) {
    std::ostringstream msg;
    msg << "energy_functional: infeasible curve (";
    for (std::size_t i = 0; i < violated.size(); ++i) msg << (i ? ", " : "") << violated[i];
    msg << "; mass " << mass << ", first moment " << first << ")";
    throw DomainError(msg.str());
  }
  const double inner =
      curve.integrate([&](double x) { return log_potential(curve, x); }, tight(1e-9)).value;
  return -0.5 * inner;
}

}  // namespace sldp
