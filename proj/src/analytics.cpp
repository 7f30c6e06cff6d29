#include "sldp/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sldp::analytics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_wall(const BarrierSpec& barrier, const char* what) {
  if (barrier.side == Side::None) throw DomainError(std::string(what) + " needs a wall");
}

double require_min_wall_open(double zeta, const char* what) {
  if (!(zeta >= 0.0 && zeta < 1.0))
    throw DomainError(std::string(what) + ": MinWall position must lie in [0, 1)");
  return zeta;
}

}  // namespace

Interval mp_support(const EnsembleParams& params) {
  const double q = params.ratio();
  if (!(q >= 1.0)) throw DomainError("Marcenko-Pastur law needs Q = M/N >= 1");
  const double root = 2.0 / std::sqrt(q);
  return {std::max(0.0, 1.0 + 1.0 / q - root), 1.0 + 1.0 / q + root};
}

double mp_density(double x, const EnsembleParams& params) {
  const Interval s = mp_support(params);
  if (x < s.lo || x > s.hi) return 0.0;
  if (x == 0.0) return kInf;
  const double q = params.ratio();
  return q / (2.0 * kPi) * std::sqrt(std::max(0.0, (s.hi - x) * (x - s.lo))) / x;
}

Interval density_support(const BarrierSpec& barrier) {
  const double z = barrier.zeta;
  switch (classify(barrier)) {
    case Regime::Unconstrained:
      return {0.0, 4.0};
    case Regime::MinWallI:
      return {z, 4.0 - 3.0 * z};
    case Regime::MaxWallII:
      return {4.0 - 3.0 * z, z};
    case Regime::MaxWallIII:
      return {0.0, z};
  }
  return {0.0, 4.0};
}

double constrained_density(double x, const BarrierSpec& barrier) {
  const Regime regime = classify(barrier);
  const double z = barrier.zeta;
  if (regime == Regime::Unconstrained) return mp_density(x, EnsembleParams{1, 1, 2.0});

  const Interval s = density_support(barrier);
  // zeta = 1 pins every eigenvalue at x = 1; no Lebesgue density exists
  if (s.width() <= 0.0) return 0.0;
  if (x < s.lo || x > s.hi) return 0.0;

  switch (regime) {
    case Regime::MinWallI: {
      if (x == s.lo) return kInf;
      return std::sqrt((s.hi - x) / (x - s.lo)) / (2.0 * kPi * (1.0 - z));
    }
    case Regime::MaxWallII: {
      if (x == s.hi) return kInf;
      return std::sqrt((x - s.lo) / (s.hi - x)) / (2.0 * kPi * (z - 1.0));
    }
    case Regime::MaxWallIII: {
      const double numerator = 2.0 * z * z + 4.0 * (z - 2.0) * (z - 2.0 * x);
      const double root = std::sqrt(x * (z - x));
      if (root == 0.0) return numerator == 0.0 ? 0.0 : kInf;
      return std::max(0.0, numerator) / (2.0 * kPi * z * z * root);
    }
    case Regime::Unconstrained:
      break;
  }
  return 0.0;
}

DensityCurve regime_density(const BarrierSpec& barrier, std::size_t grid_points) {
  const Interval s = density_support(barrier);
  if (s.width() <= 0.0)
    throw DomainError("wall at zeta = 1 pins all eigenvalues; the density is a point mass");
  return DensityCurve(s, [barrier](double x) { return constrained_density(x, barrier); },
                      grid_points);
}

double rate_function(const BarrierSpec& barrier) {
  require_wall(barrier, "rate_function");
  const double z = barrier.zeta;
  switch (classify(barrier)) {
    case Regime::MinWallI:
      return z == 1.0 ? kInf : -0.5 * std::log1p(-z);
    case Regime::MaxWallII:
      return z == 1.0 ? kInf : -0.5 * std::log(z - 1.0);
    case Regime::MaxWallIII:
      return 0.75 - 4.0 * (z - 1.0) / (z * z) - 0.5 * std::log(z / 4.0);
    case Regime::Unconstrained:
      break;
  }
  return 0.0;
}

double tail_log_probability(const EnsembleParams& params, const BarrierSpec& barrier) {
  params.validate(1);
  const double phi = rate_function(barrier);
  if (phi == 0.0) return 0.0;
  const double n = params.n;
  return -params.beta * n * n * phi;
}

Multipliers lagrange_multipliers(double zeta) {
  require_min_wall_open(zeta, "lagrange_multipliers");
  const double gap = 1.0 - zeta;
  return {std::log(gap) + (3.0 * zeta - 2.0) / (2.0 * gap), 1.0 / (2.0 * gap)};
}

double saddle_energy(double zeta) {
  require_min_wall_open(zeta, "saddle_energy");
  return 0.75 - 0.5 * std::log1p(-zeta);
}

double avg_entropy(const BarrierSpec& barrier, int n) {
  if (n < 2) throw DomainError("avg_entropy needs N >= 2");
  const double log_n = std::log(static_cast<double>(n));
  const double z = barrier.zeta;
  const Regime regime = classify(barrier);
  if (regime == Regime::Unconstrained) return log_n - 0.5;
  if (regime == Regime::MaxWallIII) return std::log(4.0 * n / z) + z / 4.0 - 1.5;
  if (z == 1.0) return log_n;

  const DensityCurve curve = regime_density(barrier, 2);
  QuadOptions opts;
  opts.abs_tol = 1e-15;
  opts.rel_tol = 1e-15;
  opts.max_intervals = 20000;
  const QuadResult r = curve.integrate(
      [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; }, opts);
  if (!(r.error <= 1e-10)) {
    std::ostringstream msg;
    msg << "entropy quadrature did not converge for zeta = " << z << " (residual " << r.error
        << ")";
    throw NumericError(msg.str(), r.error);
  }
  return log_n - r.value;
}

double page_entropy(const EnsembleParams& params) {
  if (params.n < 1 || params.m < params.n) throw DomainError("page_entropy needs 1 <= N <= M");
  const long long n = params.n;
  const long long m = params.m;
  double sum = 0.0;
  // smallest terms first
  for (long long k = n * m; k > m; --k) sum += 1.0 / static_cast<double>(k);
  return sum - static_cast<double>(n - 1) / (2.0 * m);
}

double avg_purity_unconstrained(const EnsembleParams& params) {
  if (params.n < 1 || params.m < 1) throw DomainError("dimensions must be positive");
  const double n = params.n;
  const double m = params.m;
  return (n + m) / (n * m + 1.0);
}

double rescaled_purity(const BarrierSpec& barrier) {
  const double z = barrier.zeta;
  switch (classify(barrier)) {
    case Regime::Unconstrained:
      return 2.0;
    case Regime::MinWallI:
    case Regime::MaxWallII:
      return 2.0 - 2.0 * z + z * z;
    case Regime::MaxWallIII:
      return -z * (z - 8.0) / 8.0;
  }
  return 2.0;
}

double radius_from_purity(double p) {
  // tolerate roundoff at the maximally mixed point
  if (p < 1.0 - 1e-12) throw DomainError("rescaled purity below 1 has no real radius");
  return 2.0 * std::sqrt(std::max(0.0, p - 1.0));
}

double model_radius(const BarrierSpec& barrier) {
  return radius_from_purity(rescaled_purity(barrier));
}

double semicircle_density(double x, double radius) {
  if (!(radius > 0.0)) throw DomainError("semicircle radius must be positive");
  const double d = x - 1.0;
  if (std::abs(d) >= radius) return 0.0;
  return 2.0 / (kPi * radius * radius) * std::sqrt(radius * radius - d * d);
}

double semicircle_cdf(double x, double radius) {
  if (!(radius > 0.0)) throw DomainError("semicircle radius must be positive");
  const double u = std::clamp((x - 1.0) / radius, -1.0, 1.0);
  return 0.5 + (u * std::sqrt(1.0 - u * u) + std::asin(u)) / kPi;
}

double model_log_negativity(double radius) {
  if (!(radius >= 0.0)) throw DomainError("radius must be non-negative");
  if (radius <= 1.0) return 0.0;
  const double inv = 1.0 / radius;
  const double norm = 2.0 / kPi * std::asin(inv) +
                      2.0 / (3.0 * kPi * radius) * std::sqrt(1.0 - inv * inv) *
                          (1.0 + 2.0 * radius * radius);
  return std::log(norm);
}

double matching_zeta(double zeta1) {
  if (!(zeta1 >= 0.0 && zeta1 < 0.5))
    throw DomainError("matching_zeta: MinWall position must lie in [0, 1/2)");
  return 4.0 - 2.0 * std::sqrt(2.0 * (2.0 * zeta1 - zeta1 * zeta1));
}

std::pair<double, double> transition_points() { return {0.5, 4.0 - std::sqrt(6.0)}; }

}  // namespace sldp::analytics
