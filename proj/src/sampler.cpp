#include "sldp/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sldp/kernels.hpp"
#include "sldp/stats.hpp"

namespace sldp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

Spectrum Spectrum::from_values(std::vector<double> values, double tol) {
  if (values.empty()) throw DomainError("spectrum must be non-empty");
  std::sort(values.begin(), values.end());
  if (!(values.front() >= 0.0) || !(values.back() <= 1.0))
    throw DomainError("spectrum entries must lie in [0, 1]");
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (!(std::abs(sum - 1.0) <= tol)) throw DomainError("spectrum must sum to one");
  Spectrum s;
  s.values_ = std::move(values);
  return s;
}

double Spectrum::purity() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return sum;
}

double Spectrum::entropy() const {
  double sum = 0.0;
  for (double v : values_)
    if (v > 0.0) sum -= v * std::log(v);
  return sum;
}

std::vector<double> Spectrum::rescaled() const {
  std::vector<double> out(values_);
  const double n = static_cast<double>(values_.size());
  for (double& v : out) v *= n;
  return out;
}

double log_weight(std::span<const double> values, const EnsembleParams& params) {
  const std::size_t n = values.size();
  const double exponent = params.level_exponent();
  double out = 0.0;
  for (double v : values)
    if (!(v > 0.0)) return kNegInf;
  if (exponent != 0.0) out += exponent * kernels::log_sum(values);
  double vandermonde = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    vandermonde += kernels::log_abs_diff_sum(values.subspan(i + 1), values[i]);
    if (vandermonde == kNegInf) return kNegInf;
  }
  return out + params.beta * vandermonde;
}

double log_weight(const Spectrum& s, const EnsembleParams& params) {
  return log_weight(s.values(), params);
}

PairMove propose_pair_transfer(std::span<const double> values, double width, Rng& rng) {
  const std::size_t n = values.size();
  if (n < 2) throw DomainError("pair transfer needs at least two eigenvalues");
  PairMove move;
  move.i = rng.index(n);
  move.j = rng.index(n - 1);
  if (move.j >= move.i) ++move.j;
  move.eps = rng.uniform(-width, width);
  return move;
}

std::vector<double> apply_move(std::span<const double> values, const PairMove& move) {
  std::vector<double> out(values.begin(), values.end());
  out[move.i] += move.eps;
  out[move.j] -= move.eps;
  return out;
}

CoulombChain::CoulombChain(const EnsembleParams& params, const BarrierSpec& barrier,
                           double step_width, std::uint64_t seed)
    : params_(params),
      exponent_(params.level_exponent()),
      scale_(static_cast<double>(params.n)),
      lo_(0.0),
      hi_(scale_),
      width_(step_width),
      rng_(seed) {
  params.validate(2);
  barrier.validate();
  if (!barrier.feasible())
    throw DomainError("wall at zeta = " + std::to_string(barrier.zeta) +
                      " leaves no room for a random spectrum");
  if (!(step_width > 0.0)) throw DomainError("step_width must be positive");

  const std::size_t n = static_cast<std::size_t>(params.n);
  const double inv_n = 1.0 / params.n;
  double slack = 0.5 * inv_n;
  if (barrier.side == Side::MinWall) {
    lo_ = barrier.zeta;
    slack = (1.0 - barrier.zeta) * inv_n;
  } else if (barrier.side == Side::MaxWall) {
    hi_ = barrier.zeta;
    // capped so the jitter below never pushes an entry under zero
    slack = std::min(barrier.zeta - 1.0, 1.0) * inv_n;
  }
  state_.assign(n, inv_n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * static_cast<double>(i) / static_cast<double>(n - 1) - 1.0;
    state_[i] += 0.5 * slack * t;
  }
}

double CoulombChain::log_distance_excluding(double x, std::size_t i, std::size_t j) const {
  const std::size_t a = std::min(i, j);
  const std::size_t b = std::max(i, j);
  const std::span<const double> all(state_);
  return kernels::log_abs_diff_sum(all.subspan(0, a), x) +
         kernels::log_abs_diff_sum(all.subspan(a + 1, b - a - 1), x) +
         kernels::log_abs_diff_sum(all.subspan(b + 1), x);
}

double CoulombChain::delta_log_weight(const PairMove& move) const {
  const double a = state_[move.i];
  const double b = state_[move.j];
  const double a_new = a + move.eps;
  const double b_new = b - move.eps;
  if (!admissible(a_new) || !admissible(b_new)) return kNegInf;
  if (move.eps == 0.0) return 0.0;

  double vandermonde = log_distance_excluding(a_new, move.i, move.j) -
                       log_distance_excluding(a, move.i, move.j) +
                       log_distance_excluding(b_new, move.i, move.j) -
                       log_distance_excluding(b, move.i, move.j) +
                       std::log(std::abs(a_new - b_new)) - std::log(std::abs(a - b));
  double delta = params_.beta * vandermonde;
  if (exponent_ != 0.0)
    delta += exponent_ * (std::log(a_new / a) + std::log(b_new / b));
  return delta;
}

bool CoulombChain::step() {
  const PairMove move = propose_pair_transfer(state_, width_, rng_);
  ++proposed_;
  const double delta = delta_log_weight(move);
  if (delta == kNegInf) return false;
  if (delta < 0.0 && !(std::log(rng_.uniform()) < delta)) return false;
  state_[move.i] += move.eps;
  state_[move.j] -= move.eps;
  ++accepted_;
  return true;
}

void CoulombChain::sweep() {
  for (int k = 0; k < params_.n; ++k) step();
}

void CoulombChain::tune(std::int64_t sweeps) {
  constexpr std::int64_t kWindow = 25;
  for (std::int64_t done = 0; done < sweeps;) {
    reset_counters();
    const std::int64_t block = std::min(kWindow, sweeps - done);
    for (std::int64_t s = 0; s < block; ++s) sweep();
    done += block;
    const double rate = acceptance_rate();
    if (rate < 0.2)
      width_ *= 0.7;
    else if (rate > 0.5)
      width_ *= 1.4;
    else
      width_ *= std::exp(rate - 0.35);
  }
  reset_counters();
}

double CoulombChain::pilot_autocorrelation(std::int64_t sweeps) {
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(sweeps));
  for (std::int64_t s = 0; s < sweeps; ++s) {
    sweep();
    series.push_back(min_value());
  }
  reset_counters();
  return stats::autocorrelation_time(series);
}

double CoulombChain::min_value() const { return *std::min_element(state_.begin(), state_.end()); }
double CoulombChain::max_value() const { return *std::max_element(state_.begin(), state_.end()); }

std::int64_t pilot_sweeps(const ChainConfig& cfg) {
  return std::clamp<std::int64_t>(cfg.burn_in, 500, 5000);
}

ChainResult mcmc_sample(const EnsembleParams& params, const BarrierSpec& barrier,
                        const ChainConfig& cfg) {
  cfg.validate();
  CoulombChain chain(params, barrier, cfg.step_width, cfg.seed);
  chain.tune(cfg.burn_in);

  ChainResult out;
  int thin = 1;
  if (cfg.thin) {
    thin = *cfg.thin;
  } else {
    const double tau = chain.pilot_autocorrelation(pilot_sweeps(cfg));
    thin = static_cast<int>(std::ceil(2.0 * tau));
  }

  const std::int64_t kept_sweeps = cfg.steps - cfg.burn_in;
  std::vector<double> min_series;
  min_series.reserve(static_cast<std::size_t>(kept_sweeps));
  out.samples.reserve(static_cast<std::size_t>(kept_sweeps / thin + 1));
  chain.reset_counters();
  for (std::int64_t s = 0; s < kept_sweeps; ++s) {
    chain.sweep();
    min_series.push_back(chain.min_value());
    if (s % thin == 0) {
      out.samples.push_back(chain.spectrum());
      if (cfg.max_samples && out.samples.size() >= *cfg.max_samples) break;
    }
  }

  ChainDiagnostics& d = out.diagnostics;
  d.acceptance_rate = chain.acceptance_rate();
  d.autocorrelation_time = stats::autocorrelation_time(min_series);
  d.n_kept = out.samples.size();
  d.thin = thin;
  d.step_width = chain.step_width();
  d.acceptance_warning = d.acceptance_rate < 0.05 || d.acceptance_rate > 0.95;
  return out;
}

Spectrum direct_pure_state_spectrum(const EnsembleParams& params, Rng& rng) {
  if (params.beta != 1.0 && params.beta != 2.0)
    throw UnsupportedError("direct sampling supports beta = 1 (real) or beta = 2 (complex)");
  if (params.n < 1 || params.m < params.n) throw DomainError("direct sampling needs 1 <= N <= M");
  if (params.n == 1) return Spectrum::from_values({1.0});

  Eigen::MatrixXd rho;
  if (params.beta == 2.0) {
    Eigen::MatrixXcd c(params.n, params.m);
    for (Eigen::Index j = 0; j < c.cols(); ++j)
      for (Eigen::Index i = 0; i < c.rows(); ++i) {
        const double re = rng.normal();
        c(i, j) = {re, rng.normal()};
      }
    const Eigen::MatrixXcd w = c * c.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(w, Eigen::EigenvaluesOnly);
    rho = solver.eigenvalues();
  } else {
    Eigen::MatrixXd c(params.n, params.m);
    for (Eigen::Index j = 0; j < c.cols(); ++j)
      for (Eigen::Index i = 0; i < c.rows(); ++i) c(i, j) = rng.normal();
    const Eigen::MatrixXd w = c * c.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w, Eigen::EigenvaluesOnly);
    rho = solver.eigenvalues();
  }
  std::vector<double> values(rho.data(), rho.data() + rho.size());
  for (double& v : values) v = std::max(v, 0.0);
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  for (double& v : values) v /= total;
  return Spectrum::from_values(std::move(values));
}

std::vector<TailEstimate> estimate_tail_probabilities(const EnsembleParams& params,
                                                      std::span<const double> zetas,
                                                      std::uint64_t n_draws, Rng& rng) {
  if (n_draws == 0) throw DomainError("tail estimate needs at least one draw");
  for (double z : zetas)
    if (!(z >= 0.0 && z <= 1.0)) throw DomainError("tail wall must lie in [0, 1]");

  std::vector<std::uint64_t> hits(zetas.size(), 0);
  for (std::uint64_t k = 0; k < n_draws; ++k) {
    const double scaled_min = params.n * direct_pure_state_spectrum(params, rng).min();
    for (std::size_t z = 0; z < zetas.size(); ++z)
      if (zetas[z] <= 0.0 || scaled_min > zetas[z]) ++hits[z];
  }

  std::vector<TailEstimate> out;
  out.reserve(zetas.size());
  const double n = static_cast<double>(n_draws);
  for (std::size_t z = 0; z < zetas.size(); ++z) {
    TailEstimate e;
    e.zeta = zetas[z];
    e.hits = hits[z];
    e.draws = n_draws;
    e.p = hits[z] / n;
    e.std_error = std::sqrt(e.p * (1.0 - e.p) / n);
    if (hits[z] == 0) {
      e.zero_successes = true;
      e.upper_bound = 1.0 - std::pow(0.05, 1.0 / n);
      e.std_error = e.upper_bound;
    }
    out.push_back(e);
  }
  return out;
}

TailEstimate estimate_tail_probability(const EnsembleParams& params, double zeta,
                                       std::uint64_t n_draws, Rng& rng) {
  const double z[1] = {zeta};
  return estimate_tail_probabilities(params, z, n_draws, rng).front();
}

}  // namespace sldp
