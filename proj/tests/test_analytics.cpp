#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sldp/analytics.hpp"

using namespace sldp;
using namespace sldp::analytics;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

BarrierSpec wall_for(double zeta) {
  return zeta <= 1.0 ? BarrierSpec::min_wall(zeta) : BarrierSpec::max_wall(zeta);
}

std::vector<double> zeta_grid() {
  std::vector<double> out;
  for (int k = 0; k <= 80; ++k) {
    const double z = 0.05 * k;
    if (std::abs(z - 1.0) > 1e-12) out.push_back(z);
  }
  return out;
}

double entropy_by_quadrature(const BarrierSpec& b, int n) {
  const DensityCurve c = regime_density(b);
  QuadOptions opts;
  opts.abs_tol = opts.rel_tol = 1e-14;
  opts.max_intervals = 20000;
  return std::log(n) - c.integrate([](double x) { return x > 0 ? x * std::log(x) : 0.0; }, opts).value;
}

}  // namespace

TEST_CASE("Marcenko-Pastur density") {
  const EnsembleParams square{100, 100, 2.0};
  CHECK(mp_density(2.0, square) == Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
  CHECK(mp_density(4.0, square) == 0.0);
  CHECK(mp_density(5.0, square) == 0.0);

  const EnsembleParams wide{25, 100, 2.0};
  const Interval s = mp_support(wide);
  CHECK(s.lo == Approx(0.25).epsilon(1e-14));
  CHECK(s.hi == Approx(2.25).epsilon(1e-14));
  CHECK(mp_density(s.lo, wide) == 0.0);
  CHECK(mp_density(s.hi, wide) == 0.0);

  const DensityCurve c(s, [&](double x) { return mp_density(x, wide); });
  CHECK(c.mass() == Approx(1.0).epsilon(1e-9));
  CHECK(c.moment(1) == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("constrained density examples") {
  CHECK(constrained_density(1.5, BarrierSpec::min_wall(0.5)) == Approx(1.0 / kPi).epsilon(1e-14));
  for (double x : {0.1, 0.5, 1.0, 2.0, 3.3, 3.99})
    CHECK(constrained_density(x, BarrierSpec::min_wall(0.0)) ==
          Approx(mp_density(x, EnsembleParams{})).epsilon(1e-13));
  CHECK(constrained_density(1e-12, BarrierSpec::max_wall(4.0 / 3.0)) < 1e-5);
  CHECK(constrained_density(0.1, BarrierSpec::min_wall(0.5)) == 0.0);
  CHECK(constrained_density(2.6, BarrierSpec::min_wall(0.5)) == 0.0);
  CHECK_THROWS_AS(constrained_density(0.5, BarrierSpec::min_wall(1.5)), DomainError);
  CHECK_THROWS_AS(constrained_density(0.5, BarrierSpec::max_wall(0.5)), DomainError);
}

TEST_CASE("density support") {
  Interval s = density_support(BarrierSpec::min_wall(0.5));
  CHECK(s.lo == 0.5);
  CHECK(s.hi == 2.5);
  s = density_support(BarrierSpec::min_wall(1.0));
  CHECK(s.lo == 1.0);
  CHECK(s.hi == 1.0);
  s = density_support(BarrierSpec::max_wall(2.0));
  CHECK(s.lo == 0.0);
  CHECK(s.hi == 2.0);
  s = density_support(BarrierSpec::max_wall(1.2));
  CHECK(s.lo == Approx(0.4).epsilon(1e-14));
  CHECK(s.hi == 1.2);
  CHECK_THROWS_AS(regime_density(BarrierSpec::min_wall(1.0)), DomainError);
}

TEST_CASE("rate function and tail") {
  CHECK(rate_function(BarrierSpec::min_wall(0.0)) == 0.0);
  CHECK(rate_function(BarrierSpec::max_wall(4.0)) == Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(rate_function(BarrierSpec::max_wall(4.0))) < 1e-15);
  CHECK(rate_function(BarrierSpec::min_wall(0.5)) == Approx(0.34657359027997264).epsilon(1e-14));
  CHECK(std::isinf(rate_function(BarrierSpec::min_wall(1.0))));
  CHECK(std::isinf(rate_function(BarrierSpec::max_wall(1.0))));
  CHECK_THROWS_AS(rate_function(BarrierSpec::none()), DomainError);

  CHECK(tail_log_probability({4, 4, 2.0}, BarrierSpec::min_wall(0.2)) ==
        Approx(16.0 * std::log(0.8)).epsilon(1e-14));
  CHECK(tail_log_probability({4, 4, 2.0}, BarrierSpec::min_wall(0.2)) == Approx(-3.5703).epsilon(1e-4));
  CHECK(tail_log_probability({7, 9, 1.0}, BarrierSpec::min_wall(0.0)) == 0.0);
  CHECK(tail_log_probability({100, 100, 2.0}, BarrierSpec::min_wall(0.5)) ==
        Approx(-6931.471805599453).epsilon(1e-13));
  CHECK(std::isinf(tail_log_probability({4, 4, 2.0}, BarrierSpec::min_wall(1.0))));
}

TEST_CASE("Lagrange multipliers and saddle energy") {
  Multipliers m = lagrange_multipliers(0.0);
  CHECK(m.mu1 == 0.5);
  CHECK(m.mu0 == Approx(-1.0).epsilon(1e-15));
  m = lagrange_multipliers(0.5);
  CHECK(m.mu1 == 1.0);
  CHECK(m.mu0 == Approx(-1.1931471805599454).epsilon(1e-14));
  CHECK(lagrange_multipliers(1.0 - 1e-9).mu1 > 1e8);
  CHECK_THROWS_AS(lagrange_multipliers(1.0), DomainError);

  CHECK(saddle_energy(0.0) == 0.75);
  CHECK(saddle_energy(0.5) == Approx(1.0965735902799727).epsilon(1e-14));
  for (double z : {0.1, 0.3, 0.6, 0.9})
    CHECK(saddle_energy(z) - saddle_energy(0.0) ==
          Approx(rate_function(BarrierSpec::min_wall(z))).epsilon(1e-13));
  CHECK_THROWS_AS(saddle_energy(1.2), DomainError);
}

TEST_CASE("average entropy anchors") {
  CHECK(avg_entropy(BarrierSpec::max_wall(4.0), 100) == Approx(std::log(100.0) - 0.5).epsilon(1e-14));
  CHECK(avg_entropy(BarrierSpec::max_wall(1.0), 100) == Approx(std::log(100.0)).epsilon(1e-14));
  CHECK(avg_entropy(BarrierSpec::max_wall(4.0 / 3.0), 100) ==
        Approx(std::log(300.0) - 7.0 / 6.0).epsilon(1e-14));
  CHECK(avg_entropy(BarrierSpec::none(), 100) == Approx(std::log(100.0) - 0.5));
  // the quadrature branch at zeta = 0 must reproduce the unconstrained value
  CHECK(avg_entropy(BarrierSpec::min_wall(0.0), 100) ==
        Approx(std::log(100.0) - 0.5).epsilon(1e-10));
  CHECK_THROWS_AS(avg_entropy(BarrierSpec::none(), 1), DomainError);
}

TEST_CASE("closed-form entropy agrees with quadrature in region III") {
  for (double z = 4.0 / 3.0; z <= 4.0 + 1e-12; z += 0.1) {
    const BarrierSpec b = BarrierSpec::max_wall(std::min(z, 4.0));
    CHECK(std::abs(avg_entropy(b, 100) - entropy_by_quadrature(b, 100)) < 1e-6);
  }
}

TEST_CASE("entropy is continuous across region boundaries") {
  const double e = 1e-9;
  CHECK(avg_entropy(BarrierSpec::max_wall(4.0 / 3.0 - e), 100) ==
        Approx(avg_entropy(BarrierSpec::max_wall(4.0 / 3.0), 100)).epsilon(1e-7));
  CHECK(avg_entropy(BarrierSpec::min_wall(1.0 - 1e-7), 100) == Approx(std::log(100.0)).epsilon(1e-6));
}

TEST_CASE("second derivative of the entropy jumps at 4/3") {
  const double h = 1e-5;
  const double c = 4.0 / 3.0;
  auto s = [](double z) { return avg_entropy(BarrierSpec::max_wall(z), 100); };
  const double left = (s(c) - 2.0 * s(c - h) + s(c - 2.0 * h)) / (h * h);
  const double right = (s(c + 2.0 * h) - 2.0 * s(c + h) + s(c)) / (h * h);
  CHECK(std::abs(left / -4.5 - 1.0) < 0.05);
  CHECK(std::abs(right / 0.5625 - 1.0) < 0.05);
}

TEST_CASE("Page entropy and unconstrained purity") {
  CHECK(page_entropy({1, 1, 2.0}) == 0.0);
  CHECK(page_entropy({2, 2, 2.0}) == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(std::abs(page_entropy({100, 100, 2.0}) / (std::log(100.0) - 0.5) - 1.0) < 0.01);
  CHECK_THROWS_AS(page_entropy({3, 2, 2.0}), DomainError);

  CHECK(avg_purity_unconstrained({1, 1, 2.0}) == 1.0);
  CHECK(avg_purity_unconstrained({100, 100, 2.0}) == Approx(200.0 / 10001.0).epsilon(1e-15));
  CHECK(avg_purity_unconstrained({100000, 100000, 2.0}) * 100000 == Approx(2.0).epsilon(1e-4));
}

TEST_CASE("rescaled purity and model radius") {
  CHECK(rescaled_purity(BarrierSpec::min_wall(0.0)) == 2.0);
  CHECK(rescaled_purity(BarrierSpec::min_wall(1.0)) == 1.0);
  CHECK(rescaled_purity(BarrierSpec::max_wall(4.0)) == 2.0);
  CHECK(rescaled_purity(BarrierSpec::none()) == 2.0);
  CHECK(rescaled_purity(BarrierSpec::min_wall(0.5)) == 1.25);

  CHECK(model_radius(BarrierSpec::min_wall(0.5)) == Approx(1.0).epsilon(1e-15));
  CHECK(model_radius(BarrierSpec::max_wall(4.0)) == Approx(2.0).epsilon(1e-15));
  CHECK(model_radius(BarrierSpec::min_wall(0.0)) == Approx(2.0).epsilon(1e-15));
  for (double z : {0.1, 0.4, 0.9}) CHECK(model_radius(BarrierSpec::min_wall(z)) == Approx(2.0 * (1.0 - z)));
  for (double z : {1.1, 1.3}) CHECK(model_radius(BarrierSpec::max_wall(z)) == Approx(2.0 * (z - 1.0)));
  CHECK_THROWS_AS(radius_from_purity(0.9), DomainError);
}

TEST_CASE("purity equals the second moment of the regime density") {
  for (double z : zeta_grid()) {
    const BarrierSpec b = wall_for(z);
    CHECK(std::abs(regime_density(b).moment(2) - rescaled_purity(b)) < 1e-6);
  }
}

TEST_CASE("semicircle") {
  CHECK(semicircle_density(1.0, 2.0) == Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(semicircle_density(-1.0, 2.0) == 0.0);
  for (double r : {0.3, 1.0, 2.0}) {
    const double mass = integrate_sqrt_endpoints([r](double x) { return semicircle_density(x, r); },
                                                 1.0 - r, 1.0 + r)
                            .value;
    CHECK(mass == Approx(1.0).epsilon(1e-12));
    CHECK(semicircle_cdf(1.0 + r, r) == 1.0);
    CHECK(semicircle_cdf(1.0, r) == Approx(0.5));
  }
}

TEST_CASE("model log negativity") {
  CHECK(std::abs(model_log_negativity(2.0) - 0.148702) < 5e-6);
  CHECK(model_log_negativity(1.0) == 0.0);
  CHECK(std::abs(model_log_negativity(1.0 + 1e-10)) < 1e-8);
  CHECK(std::abs(model_log_negativity(1.75) - 0.0919) < 5e-4);
  double prev = 0.0;
  for (double r = 1.01; r < 5.0; r += 0.01) {
    const double v = model_log_negativity(r);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("matching walls and transition points") {
  CHECK(std::abs(matching_zeta(0.125) - 2.6307) < 5e-4);
  CHECK(matching_zeta(0.0) == 4.0);
  for (double z1 : {0.1, 0.2, 0.3}) {
    const double z2 = matching_zeta(z1);
    CHECK(z2 > 4.0 - std::sqrt(6.0));
    CHECK(std::abs(rescaled_purity(BarrierSpec::max_wall(z2)) -
                   rescaled_purity(BarrierSpec::min_wall(z1))) < 1e-12);
  }
  CHECK_THROWS_AS(matching_zeta(0.5), DomainError);

  const auto [a, b] = transition_points();
  CHECK(a == 0.5);
  CHECK(b == Approx(1.5505102572168221).epsilon(1e-15));
  CHECK(model_radius(BarrierSpec::min_wall(a)) == Approx(1.0).epsilon(1e-14));
  CHECK(model_radius(BarrierSpec::max_wall(b)) == Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(model_log_negativity(model_radius(BarrierSpec::max_wall(b)))) < 1e-7);
}

TEST_CASE("normalization and unit trace over every regime") {
  for (double z : zeta_grid()) {
    const BarrierSpec b = wall_for(z);
    const DensityCurve c = regime_density(b);
    INFO("zeta = " << z);
    CHECK(std::abs(c.mass() - 1.0) < 1e-6);
    CHECK(std::abs(c.moment(1) - 1.0) < 1e-6);
    for (double v : c.values()) CHECK(v >= 0.0);
  }
}

TEST_CASE("reflection symmetry about zeta = 1") {
  for (double z = 2.0 / 3.0; z < 1.0 - 1e-9; z += 0.01) {
    const BarrierSpec lo = BarrierSpec::min_wall(z);
    const BarrierSpec hi = BarrierSpec::max_wall(2.0 - z);
    const Interval s = density_support(lo);
    for (int k = 1; k < 50; ++k) {
      const double x = s.lo + s.width() * k / 50.0;
      CHECK(std::abs(constrained_density(x, lo) - constrained_density(2.0 - x, hi)) < 1e-9);
    }
    CHECK(std::abs(rate_function(lo) - rate_function(hi)) < 1e-9);
  }
}

TEST_CASE("regions II and III meet continuously at 4/3") {
  const double c = 4.0 / 3.0;
  const BarrierSpec b{Side::MaxWall, c};
  for (int k = 1; k < 200; ++k) {
    const double x = c * k / 200.0;
    const double region3 = constrained_density(x, b);
    // region II formula on support [4 - 3c, c] = [0, c]
    const double region2 = std::sqrt(x / (c - x)) / (2.0 * kPi * (c - 1.0));
    CHECK(std::abs(region3 - region2) < 1e-9);
  }
  CHECK(std::abs(-0.5 * std::log(c - 1.0) - rate_function(b)) < 1e-12);
}
