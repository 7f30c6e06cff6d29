#include "sldp/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "sldp/types.hpp"

namespace sldp::stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double std_error(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("standard error of an empty sample");
  return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

double autocorrelation_time(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 4) return 0.5;
  const double m = mean(series);
  std::vector<double> centred(n);
  for (std::size_t i = 0; i < n; ++i) centred[i] = series[i] - m;

  auto autocov = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) s += centred[i] * centred[i + lag];
    return s / static_cast<double>(n);
  };
  const double gamma0 = autocov(0);
  if (!(gamma0 > 0.0)) return 0.5;

  double tau = -0.5;
  for (std::size_t lag = 0; lag + 1 < n / 2; lag += 2) {
    const double pair = (autocov(lag) + autocov(lag + 1)) / gamma0;
    if (pair <= 0.0) break;
    tau += pair;
  }
  return std::max(tau, 0.5);
}

double kolmogorov_pvalue(double d, double ne) {
  if (!(d > 0.0)) return 1.0;
  const double root = std::sqrt(ne);
  const double lambda = (root + 0.12 + 0.11 / root) * d;
  if (lambda < 1.18) {
    // Jacobi-transformed series converges fast for small lambda
    constexpr double kPi = std::numbers::pi;
    const double factor = std::sqrt(2.0 * kPi) / lambda;
    const double q = -kPi * kPi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double term = std::exp((2 * k - 1) * (2 * k - 1) * q);
      cdf += term;
      if (term < 1e-17) break;
    }
    return std::clamp(1.0 - factor * cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-17) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("KS test needs samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, kolmogorov_pvalue(d, n)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("KS test needs two non-empty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(i / nx - j / ny));
  }
  return {d, kolmogorov_pvalue(d, nx * ny / (nx + ny))};
}

double chi_squared_pvalue(double statistic, double dof) {
  if (!(dof > 0.0)) throw DomainError("chi-squared needs positive degrees of freedom");
  if (!(statistic > 0.0)) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

}  // namespace sldp::stats
