#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sldp/analytics.hpp"
#include "sldp/ensemble.hpp"
#include "sldp/stats.hpp"

using namespace sldp;
using doctest::Approx;

namespace {

ComplexMatrix bell_state() {
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  for (int i : {0, 3})
    for (int j : {0, 3}) rho(i, j) = 0.5;
  return rho;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Haar unitaries") {
  Rng rng(1);
  const ComplexMatrix one = haar_unitary(1, rng);
  CHECK(std::abs(std::abs(one(0, 0)) - 1.0) < 1e-14);
  for (int n : {2, 5, 16, 100}) {
    const ComplexMatrix u = haar_unitary(n, rng);
    CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n)) < 1e-10);
  }
  std::vector<double> entry;
  for (int k = 0; k < 10000; ++k) entry.push_back(std::norm(haar_unitary(16, rng)(0, 0)));
  CHECK(std::abs(stats::mean(entry) - 1.0 / 16.0) < 3.0 * stats::std_error(entry));
  CHECK_THROWS_AS(haar_unitary(0, rng), DomainError);
}

TEST_CASE("assembled density matrices") {
  Rng rng(2);
  const Spectrum s = Spectrum::from_values({0.1, 0.2, 0.3, 0.4});
  const ComplexMatrix diag = assemble_density(s, ComplexMatrix::Identity(4, 4));
  for (int i = 0; i < 4; ++i) CHECK(diag(i, i).real() == s.values()[i]);

  const ComplexMatrix u = haar_unitary(4, rng);
  const ComplexMatrix rho = assemble_density(s, u);
  CHECK(max_abs(rho - rho.adjoint()) == 0.0);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  const std::vector<double> ev = hermitian_spectrum(rho);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(ev[i] - s.values()[i]) < 1e-10);
  CHECK(std::abs((rho * rho).trace().real() - s.purity()) < 1e-10);
  CHECK_THROWS_AS(assemble_density(s, haar_unitary(3, rng)), DomainError);
}

TEST_CASE("partial transpose") {
  const std::vector<double> bell = hermitian_spectrum(partial_transpose(bell_state(), {2, 2}));
  CHECK(bell[0] == Approx(-0.5));
  for (int i = 1; i < 4; ++i) CHECK(bell[i] == Approx(0.5));
  CHECK(log_negativity(bell) == Approx(std::log(2.0)));

  Rng rng(3);
  const ComplexMatrix a = assemble_density(Spectrum::from_values({0.3, 0.7}), haar_unitary(2, rng));
  const ComplexMatrix b =
      assemble_density(Spectrum::from_values({0.1, 0.2, 0.7}), haar_unitary(3, rng));
  ComplexMatrix product(6, 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) product.block(3 * i, 3 * j, 3, 3) = a(i, j) * b;
  const ComplexMatrix pt = partial_transpose(product, {2, 3});
  ComplexMatrix expected(6, 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) expected.block(3 * i, 3 * j, 3, 3) = a(i, j) * b.transpose();
  CHECK(max_abs(pt - expected) < 1e-15);
  const std::vector<double> ev = hermitian_spectrum(pt);
  CHECK(ev.front() > -1e-12);
  CHECK(log_negativity(ev) == 0.0);

  // involution, trace, and independence from the transposed factor
  const Spectrum s = Spectrum::from_values(std::vector<double>(12, 1.0 / 12.0));
  std::vector<double> values(12);
  for (int i = 0; i < 12; ++i) values[i] = (i + 1) / 78.0;
  const ComplexMatrix rho = assemble_density(Spectrum::from_values(values), haar_unitary(12, rng));
  const Bipartition parts{3, 4};
  const ComplexMatrix once = partial_transpose(rho, parts);
  CHECK((partial_transpose(once, parts).array() == rho.array()).all());
  CHECK(std::abs(once.trace() - 1.0) < 1e-12);
  const std::vector<double> second = hermitian_spectrum(once);
  const std::vector<double> first = hermitian_spectrum(partial_transpose(rho, parts, PtSubsystem::First));
  for (int i = 0; i < 12; ++i) CHECK(std::abs(first[i] - second[i]) < 1e-12);
  CHECK_THROWS_AS(partial_transpose(rho, {5, 2}), DomainError);
}

TEST_CASE("Hermitian spectra") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.8;
  d(1, 1) = 0.2;
  const std::vector<double> ev = hermitian_spectrum(d);
  CHECK(ev[0] == Approx(0.2));
  CHECK(ev[1] == Approx(0.8));

  Rng rng(4);
  const ComplexMatrix rho = partial_transpose(
      assemble_density(Spectrum::from_values(std::vector<double>(16, 1.0 / 16)), haar_unitary(16, rng)),
      {4, 4});
  const Eigensystem sys = hermitian_eigensystem(rho);
  CHECK(sys.residual < 1e-9);
  CHECK(std::abs(std::accumulate(sys.values.begin(), sys.values.end(), 0.0) - rho.trace().real()) < 1e-10);

  ComplexMatrix bad = d;
  bad(0, 1) = 1e-6;
  CHECK_THROWS_AS(hermitian_spectrum(bad), DomainError);
}

TEST_CASE("log negativity") {
  const std::vector<double> ppt = {0.1, 0.2, 0.3, 0.4};
  CHECK(log_negativity(ppt) == 0.0);
  const std::vector<double> npt = {-0.1, 0.3, 0.3, 0.5};
  CHECK(log_negativity(npt) == Approx(std::log(1.2)));
}

TEST_CASE("GUE shift model") {
  Rng rng(5);
  const std::vector<double> flat = gue_model_sample(10, 0.1, rng);
  for (double v : flat) CHECK(v == Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(gue_model_sample(10, 0.05, rng), DomainError);
  CHECK_THROWS_AS(gue_model_sample(10, 1.5, rng), DomainError);

  const int n = 100;
  const double purity = 2.0 / n;
  std::vector<double> means, second;
  double lo = 1e9, hi = -1e9;
  for (int k = 0; k < 200; ++k) {
    const std::vector<double> ev = gue_model_sample(n, purity, rng);
    double m = 0.0, q = 0.0;
    for (double v : ev) {
      m += v;
      q += (v - 1.0 / n) * (v - 1.0 / n);
    }
    means.push_back(m / n);
    second.push_back(q);
    lo = std::min(lo, n * ev.front());
    hi = std::max(hi, n * ev.back());
  }
  CHECK(std::abs(stats::mean(means) - 1.0 / n) < 3.0 * stats::std_error(means));
  // tr X^2 = purity - 1/N in expectation
  CHECK(std::abs(stats::mean(second) - (purity - 1.0 / n)) < 3.0 * stats::std_error(second));
  CHECK(lo > -1.0 - 0.3);
  CHECK(hi < 3.0 + 0.3);
}

TEST_CASE("PT ensemble pipeline") {
  ChainConfig cfg;
  cfg.steps = 4000;
  cfg.burn_in = 500;
  cfg.seed = 5;
  const EnsembleParams p{16, 16, 2.0};
  const PtEnsemble e = sample_pt_ensemble(p, {4, 4}, BarrierSpec::min_wall(0.2), 50, cfg);
  CHECK(e.samples.size() == 50);
  for (const PtSample& s : e.samples) {
    CHECK(std::abs(std::accumulate(s.pt_spectrum.begin(), s.pt_spectrum.end(), 0.0) - 1.0) < 1e-10);
    CHECK((s.log_negativity == 0.0) == (s.pt_spectrum.front() >= 0.0));
    CHECK(p.n * s.spectrum.front() >= 0.2);
  }
  const NegativityEstimate a = average_negativity(p, {4, 4}, BarrierSpec::min_wall(0.2), 50, cfg);
  CHECK(a.n_matrices == 50);
  CHECK(a.mean > 0.0);
  CHECK_THROWS_AS(average_negativity(p, {3, 4}, BarrierSpec::none(), 10, cfg), DomainError);
}
