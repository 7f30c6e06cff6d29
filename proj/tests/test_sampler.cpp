#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sldp/analytics.hpp"
#include "sldp/empirics.hpp"
#include "sldp/sampler.hpp"
#include "sldp/stats.hpp"

using namespace sldp;
using doctest::Approx;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> column(const std::vector<Spectrum>& spectra, bool want_max) {
  std::vector<double> out;
  out.reserve(spectra.size());
  for (const Spectrum& s : spectra) out.push_back(want_max ? s.max() : s.min());
  return out;
}

}  // namespace

TEST_CASE("Spectrum validation") {
  const Spectrum s = Spectrum::from_values({0.75, 0.25});
  CHECK(s.values()[0] == 0.25);
  CHECK(s.values()[1] == 0.75);
  CHECK(s.purity() == Approx(0.625));
  CHECK(s.rescaled()[1] == 1.5);
  CHECK_THROWS_AS(Spectrum::from_values({0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(Spectrum::from_values({-0.1, 1.1}), DomainError);
  CHECK_THROWS_AS(Spectrum::from_values({}), DomainError);
}

TEST_CASE("log weight examples") {
  CHECK(log_weight(Spectrum::from_values({0.5, 0.5}), {2, 2, 2.0}) == kNegInf);
  CHECK(log_weight(Spectrum::from_values({0.25, 0.75}), {2, 2, 2.0}) ==
        Approx(2.0 * std::log(0.5)).epsilon(1e-14));
  CHECK(log_weight(Spectrum::from_values({0.25, 0.75}), {2, 2, 1.0}) ==
        Approx(-0.5 * (std::log(0.25) + std::log(0.75)) + std::log(0.5)).epsilon(1e-14));
  CHECK(log_weight(Spectrum::from_values({0.0, 1.0}), {2, 3, 2.0}) == kNegInf);
}

TEST_CASE("pair transfer proposals") {
  const std::vector<double> s = {0.1, 0.2, 0.3, 0.4};
  CHECK(apply_move(s, {0, 1, 0.0}) == s);
  Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    const PairMove m = propose_pair_transfer(s, 0.05, rng);
    CHECK(m.i != m.j);
    CHECK(std::abs(m.eps) <= 0.05);
    const std::vector<double> c = apply_move(s, m);
    CHECK(std::abs(std::accumulate(c.begin(), c.end(), 0.0) - 1.0) < 1e-15);
  }
  CoulombChain chain({4, 4, 2.0}, BarrierSpec::none(), 0.01, 1);
  const double first = chain.state()[0];
  CHECK(chain.delta_log_weight({0, 1, -first - 1e-3}) == kNegInf);
  CHECK(chain.delta_log_weight({0, 1, 0.0}) == 0.0);
}

TEST_CASE("incremental weight change matches the full log weight") {
  const EnsembleParams p{6, 9, 1.5};
  CoulombChain chain(p, BarrierSpec::none(), 0.02, 17);
  chain.tune(50);
  Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    const std::vector<double> s(chain.state().begin(), chain.state().end());
    const PairMove m = propose_pair_transfer(s, 0.01, rng);
    const double delta = chain.delta_log_weight(m);
    if (delta == kNegInf) continue;
    CHECK(delta == Approx(log_weight(apply_move(s, m), p) - log_weight(s, p)).epsilon(1e-9));
    chain.step();
  }
}

TEST_CASE("walls are enforced exactly") {
  ChainConfig cfg;
  cfg.steps = 3000;
  cfg.burn_in = 500;
  cfg.seed = 42;
  const EnsembleParams p{20, 20, 2.0};
  const ChainResult lo = mcmc_sample(p, BarrierSpec::min_wall(0.5), cfg);
  REQUIRE(!lo.samples.empty());
  for (const Spectrum& s : lo.samples) {
    CHECK(s.rescaled().front() >= 0.5);
    CHECK(std::abs(std::accumulate(s.values().begin(), s.values().end(), 0.0) - 1.0) < 1e-12);
  }
  const ChainResult hi = mcmc_sample(p, BarrierSpec::max_wall(1.5), cfg);
  for (const Spectrum& s : hi.samples) CHECK(s.rescaled().back() <= 1.5);

  const ChainDiagnostics& d = lo.diagnostics;
  CHECK(d.acceptance_rate > 0.15);
  CHECK(d.acceptance_rate < 0.6);
  CHECK_FALSE(d.acceptance_warning);
  CHECK(d.autocorrelation_time >= 0.5);
  CHECK(d.n_kept == lo.samples.size());

  CHECK_THROWS_AS(mcmc_sample(p, BarrierSpec::min_wall(1.0), cfg), DomainError);
  CHECK_THROWS_AS(mcmc_sample(p, BarrierSpec::max_wall(1.0), cfg), DomainError);
}

TEST_CASE("the starting state is strictly inside every legal wall") {
  const EnsembleParams p{100, 100, 2.0};
  std::vector<BarrierSpec> walls = {BarrierSpec::none()};
  for (double z = 0.0; z < 0.999; z += 0.05) walls.push_back(BarrierSpec::min_wall(z));
  for (double z = 1.05; z <= 4.0 + 1e-9; z += 0.05) walls.push_back(BarrierSpec::max_wall(std::min(z, 4.0)));
  for (const BarrierSpec& b : walls) {
    INFO("zeta = " << b.zeta);
    const CoulombChain chain(p, b, 1e-3, 1);
    CHECK(chain.min_value() > 0.0);
    CHECK(std::isfinite(log_weight(chain.state(), p)));
    if (b.side == Side::MinWall) CHECK(chain.min_value() * p.n >= b.zeta);
    if (b.side == Side::MaxWall) CHECK(chain.max_value() * p.n <= b.zeta);
  }
  ChainConfig cfg;
  cfg.steps = 1500;
  cfg.burn_in = 500;
  cfg.thin = 10;
  const ChainResult r = mcmc_sample(p, BarrierSpec::max_wall(4.0), cfg);
  CHECK(r.samples.size() == 100);
  cfg.max_samples = 7;
  CHECK(mcmc_sample(p, BarrierSpec::max_wall(4.0), cfg).samples.size() == 7);
}

TEST_CASE("identical seeds give identical chains") {
  ChainConfig cfg;
  cfg.steps = 600;
  cfg.burn_in = 100;
  cfg.thin = 5;
  const ChainResult a = mcmc_sample({8, 8, 2.0}, BarrierSpec::min_wall(0.3), cfg);
  const ChainResult b = mcmc_sample({8, 8, 2.0}, BarrierSpec::min_wall(0.3), cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k)
    CHECK(std::equal(a.samples[k].values().begin(), a.samples[k].values().end(),
                     b.samples[k].values().begin()));
}

TEST_CASE("detailed balance on the N = 3 simplex") {
  // Visit frequencies of the ordered pair (lambda_(1), lambda_(2)) on a
  // coarse grid against the integrated weight |Vandermonde|^2 (the level
  // exponent vanishes for N = M, beta = 2). Labelled coordinates are not
  // used: the weight vanishes on coincident eigenvalues, so the chain
  // permutes labels slowly although every symmetric observable mixes fast.
  const EnsembleParams p{3, 3, 2.0};
  CoulombChain chain(p, BarrierSpec::none(), 0.1, 2024);
  chain.tune(2000);
  constexpr int kCells = 8;
  std::vector<double> observed(kCells * kCells, 0.0);
  const int n_samples = 100000;
  for (int s = 0; s < n_samples; ++s) {
    for (int k = 0; k < 10; ++k) chain.sweep();
    const Spectrum sp = chain.spectrum();
    const int a = std::min(kCells - 1, static_cast<int>(sp.values()[0] * 3 * kCells));
    const int b = std::min(kCells - 1, static_cast<int>(sp.values()[1] * 2 * kCells));
    observed[a * kCells + b] += 1.0;
  }

  std::vector<double> expected(kCells * kCells, 0.0);
  constexpr int kSub = 80;
  const double hx = 1.0 / (3 * kCells * kSub);
  const double hy = 1.0 / (2 * kCells * kSub);
  double total = 0.0;
  for (int i = 0; i < kCells * kSub; ++i)
    for (int j = 0; j < kCells * kSub; ++j) {
      const double x = (i + 0.5) * hx;
      const double y = (j + 0.5) * hy;
      const double z = 1.0 - x - y;
      if (!(x < y && y < z)) continue;
      const double w = std::pow((x - y) * (x - z) * (y - z), 2);
      expected[(i / kSub) * kCells + j / kSub] += w;
      total += w;
    }
  double chi2 = 0.0;
  int dof = -1;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (std::size_t c = 0; c < expected.size(); ++c) {
    const double e = expected[c] / total * n_samples;
    if (e < 20.0) {
      pooled_obs += observed[c];
      pooled_exp += e;
      continue;
    }
    chi2 += (observed[c] - e) * (observed[c] - e) / e;
    ++dof;
  }
  if (pooled_exp > 0.0) {
    chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++dof;
  }
  const double pvalue = stats::chi_squared_pvalue(chi2, dof);
  INFO("chi2 = " << chi2 << " dof = " << dof);
  CHECK(pvalue > 0.01);
}

TEST_CASE("direct sampler") {
  Rng rng(1);
  const Spectrum one = direct_pure_state_spectrum({1, 5, 2.0}, rng);
  CHECK(one.size() == 1);
  CHECK(one.values()[0] == 1.0);
  CHECK_THROWS_AS(direct_pure_state_spectrum({3, 3, 4.0}, rng), UnsupportedError);
  const Spectrum real = direct_pure_state_spectrum({4, 6, 1.0}, rng);
  CHECK(real.size() == 4);

  // large-N spectrum and purity
  const EnsembleParams big{100, 100, 2.0};
  std::vector<double> xs;
  std::vector<double> purities;
  for (int k = 0; k < 600; ++k) {
    const Spectrum s = direct_pure_state_spectrum(big, rng);
    for (double x : s.rescaled()) xs.push_back(x);
    purities.push_back(s.purity());
  }
  const DensityCurve mp({0.0, 4.0}, [&](double x) { return analytics::mp_density(x, big); });
  const Histogram h = histogram(xs, 80, {0.0, 4.4});
  CHECK(compare_density(h, mp).l1 < 0.05);
  const double se = stats::std_error(purities);
  CHECK(std::abs(stats::mean(purities) - analytics::avg_purity_unconstrained(big)) < 3.0 * se);
}

TEST_CASE("MCMC and direct sampling agree at N = M = 4") {
  const EnsembleParams p{4, 4, 2.0};
  ChainConfig cfg;
  cfg.steps = 82000;
  cfg.burn_in = 2000;
  cfg.seed = 99;
  const ChainResult chain = mcmc_sample(p, BarrierSpec::none(), cfg);
  const std::vector<double> mc_max = column(chain.samples, true);

  Rng rng(derive_seed(99, streams::kDirect, 0));
  std::vector<Spectrum> direct;
  for (int k = 0; k < 20000; ++k) direct.push_back(direct_pure_state_spectrum(p, rng));
  const std::vector<double> d_max = column(direct, true);
  const std::vector<double> d_min = column(direct, false);

  const double se = std::hypot(stats::std_error(mc_max), stats::std_error(d_max));
  CHECK(std::abs(stats::mean(mc_max) - stats::mean(d_max)) < 3.0 * se);
  CHECK(stats::ks_two_sample(mc_max, d_max).p_value > 0.01);
  CHECK(stats::ks_two_sample(column(chain.samples, false), d_min).p_value > 0.01);
}

TEST_CASE("tail probabilities") {
  Rng rng(12);
  const EnsembleParams p{4, 4, 2.0};
  CHECK(estimate_tail_probability(p, 0.0, 100, rng).p == 1.0);

  const std::vector<double> zetas = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  const std::vector<TailEstimate> est = estimate_tail_probabilities(p, zetas, 200000, rng);
  for (std::size_t k = 1; k < est.size(); ++k) CHECK(est[k].p <= est[k - 1].p);
  const TailEstimate& at02 = est[4];
  const double oracle = std::pow(0.8, 15);
  CHECK(std::abs(at02.p - oracle) < 3.0 * at02.std_error);

  const TailEstimate none = estimate_tail_probability(p, 0.99, 1000, rng);
  CHECK(none.zero_successes);
  CHECK(none.p == 0.0);
  CHECK(none.upper_bound == Approx(1.0 - std::pow(0.05, 1.0 / 1000)));
  CHECK_THROWS_AS(estimate_tail_probability(p, 1.5, 10, rng), DomainError);
}
