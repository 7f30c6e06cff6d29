#pragma once

#include <functional>

namespace sldp {

using Integrand = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = true;
};

/// Refinement stops once the error estimate is below max(abs_tol, rel_tol |I|),
/// and never pursues a relative accuracy finer than about 50 ulp.
struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  int max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod (G7/K15) on [a, b]; error is |K15 - G7|
/// summed over the final partition.
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts = {});

/// Integral over [a, b] after x = a + (b - a) sin^2(theta).
///
/// The Jacobian 2 sqrt((x - a)(b - x)) cancels inverse-square-root endpoint
/// divergences, so densities of the form g(x)/sqrt((x - a)(b - x)) become
/// smooth integrands in theta.
QuadResult integrate_sqrt_endpoints(const Integrand& f, double a, double b,
                                    const QuadOptions& opts = {});

/// As integrate_sqrt_endpoints, throwing NumericError when the error
/// estimate exceeds abs_tol.
double integrate_checked(const Integrand& f, double a, double b, double abs_tol = 1e-10);

}  // namespace sldp
