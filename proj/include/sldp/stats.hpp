#pragma once

#include <functional>
#include <span>

/// Small statistics toolkit used by the samplers and the acceptance checks.
namespace sldp::stats {

double mean(std::span<const double> xs);
/// Unbiased sample variance; zero for fewer than two points.
double variance(std::span<const double> xs);
/// Standard error of the mean assuming independent samples.
double std_error(std::span<const double> xs);

/// Integrated autocorrelation time, tau = 1/2 + sum_{k>=1} rho_k, with the
/// sum truncated by the initial positive sequence rule. Never below 0.5.
double autocorrelation_time(std::span<const double> series);

/// Asymptotic Kolmogorov survival function with small-sample correction,
/// for statistic d and effective sample size ne.
double kolmogorov_pvalue(double d, double ne);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Upper tail of the chi-squared distribution.
double chi_squared_pvalue(double statistic, double dof);

}  // namespace sldp::stats
