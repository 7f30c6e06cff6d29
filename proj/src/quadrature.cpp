#include "sldp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "sldp/types.hpp"

namespace sldp {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();

struct Panel {
  double a, b, value, error;
  /// Error level reachable in floating point on this panel.
  double floor;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// Error scaling follows QUADPACK's QK15: |K - G| is mapped through
// resasc * min(1, (200 |K - G| / resasc)^1.5) and floored at 50 ulp of |f|.
Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fx;
  fx[7] = f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    fx[i] = f(center - dx);
    fx[14 - i] = f(center + dx);
  }
  double kronrod = fx[7] * kKronrodWeights[7];
  double gauss = fx[7] * kGaussWeights[3];
  double resabs = std::abs(fx[7]) * kKronrodWeights[7];
  for (int i = 0; i < 7; ++i) {
    const double pair = fx[i] + fx[14 - i];
    kronrod += kKronrodWeights[i] * pair;
    resabs += kKronrodWeights[i] * (std::abs(fx[i]) + std::abs(fx[14 - i]));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double resasc = kKronrodWeights[7] * std::abs(fx[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kKronrodWeights[i] * (std::abs(fx[i] - mean) + std::abs(fx[14 - i] - mean));

  const double scale = std::abs(half);
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = kRoundoff * resabs;
  err = std::max(err, floor);
  return {a, b, kronrod * half, err, floor};
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts) {
  QuadResult out;
  if (a == b) return out;
  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod(f, a, b);
  double total = first.value;
  double error = first.error;
  double floor = first.floor;
  panels.push(first);
  // Requests below roundoff only drive refinement into endpoint noise.
  auto target = [&] {
    return std::max({opts.abs_tol, opts.rel_tol * std::abs(total), 2.0 * floor});
  };
  while (error > target()) {
    if (static_cast<int>(panels.size()) >= opts.max_intervals || !std::isfinite(error)) {
      out.converged = false;
      break;
    }
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      out.converged = false;
      break;
    }
    panels.pop();
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    floor += left.floor + right.floor - worst.floor;
    panels.push(left);
    panels.push(right);
  }
  // re-sum to shed the drift of the running updates
  out.intervals = static_cast<int>(panels.size());
  double value = 0.0;
  double err = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  out.value = value;
  out.error = err;
  return out;
}

QuadResult integrate_sqrt_endpoints(const Integrand& f, double a, double b,
                                    const QuadOptions& opts) {
  // no representable interior point: the (integrable) contribution is below roundoff
  if (!(std::nextafter(a, b) < std::nextafter(b, a))) return {};
  const double width = b - a;
  auto g = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    // nodes that round onto an endpoint would hit a singular density value
    const double x = std::clamp(a + width * s * s, std::nextafter(a, b), std::nextafter(b, a));
    return f(x) * 2.0 * width * s * c;
  };
  return integrate(g, 0.0, std::numbers::pi / 2, opts);
}

double integrate_checked(const Integrand& f, double a, double b, double abs_tol) {
  QuadOptions opts;
  opts.abs_tol = std::min(abs_tol, 1e-12);
  const QuadResult r = integrate_sqrt_endpoints(f, a, b, opts);
  if (!(r.error <= abs_tol) || !std::isfinite(r.value)) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge: residual estimate "
        << r.error;
    throw NumericError(msg.str(), r.error);
  }
  return r.value;
}

}  // namespace sldp
