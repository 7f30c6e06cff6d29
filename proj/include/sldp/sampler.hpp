#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sldp/rng.hpp"
#include "sldp/types.hpp"

namespace sldp {

/// Schmidt eigenvalues: non-negative, summing to one, stored ascending.
class Spectrum {
 public:
  Spectrum() = default;

  /// Sorts and validates; throws DomainError when an entry leaves [0, 1] or
  /// the sum differs from one by more than tol.
  static Spectrum from_values(std::vector<double> values, double tol = 1e-12);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double purity() const;
  /// -sum lambda ln lambda in nats.
  double entropy() const;
  /// N * lambda, ascending.
  std::vector<double> rescaled() const;

 private:
  std::vector<double> values_;
};

/// Log of the fixed-trace joint density without its normalization:
/// [beta (M - N + 1)/2 - 1] sum ln lambda_i + beta sum_{i<j} ln|lambda_i - lambda_j|.
/// Returns -infinity for a zero entry or a degenerate pair.
double log_weight(std::span<const double> values, const EnsembleParams& params);
double log_weight(const Spectrum& s, const EnsembleParams& params);

/// Move lambda_i -> lambda_i + eps, lambda_j -> lambda_j - eps.
struct PairMove {
  std::size_t i = 0;
  std::size_t j = 0;
  double eps = 0.0;
};

/// Picks distinct i, j uniformly and eps ~ U(-width, width). Symmetric.
PairMove propose_pair_transfer(std::span<const double> values, double width, Rng& rng);
/// The candidate state; may contain entries outside the feasible region.
std::vector<double> apply_move(std::span<const double> values, const PairMove& move);

/// Metropolis chain over the simplex with pair-transfer proposals.
///
/// The state starts at the uniform spectrum plus a zero-sum jitter that
/// stays inside the wall, so every legal wall is feasible from step one.
class CoulombChain {
 public:
  CoulombChain(const EnsembleParams& params, const BarrierSpec& barrier, double step_width,
               std::uint64_t seed);

  /// One proposal; returns whether it was accepted.
  bool step();
  /// N proposals.
  void sweep();
  /// Burn-in sweeps with the proposal width adapted towards 20-50% acceptance.
  void tune(std::int64_t sweeps);
  /// Runs `sweeps` frozen sweeps and returns the lambda_min autocorrelation time.
  double pilot_autocorrelation(std::int64_t sweeps);

  /// Change in log weight for `move`; -infinity when the move leaves the wall.
  double delta_log_weight(const PairMove& move) const;

  std::span<const double> state() const noexcept { return state_; }
  Spectrum spectrum() const { return Spectrum::from_values(state_); }
  double min_value() const;
  double max_value() const;

  double step_width() const noexcept { return width_; }
  double acceptance_rate() const noexcept {
    return proposed_ ? static_cast<double>(accepted_) / proposed_ : 0.0;
  }
  void reset_counters() noexcept { proposed_ = accepted_ = 0; }

 private:
  // compared in rescaled units so emitted spectra satisfy N * lambda >= zeta exactly
  bool admissible(double value) const noexcept {
    const double x = value * scale_;
    return value > 0.0 && x >= lo_ && x <= hi_;
  }
  double log_distance_excluding(double x, std::size_t i, std::size_t j) const;

  EnsembleParams params_;
  double exponent_;
  double scale_;
  double lo_;
  double hi_;
  double width_;
  Rng rng_;
  std::vector<double> state_;
  std::uint64_t proposed_ = 0;
  std::uint64_t accepted_ = 0;
};

struct ChainResult {
  std::vector<Spectrum> samples;
  ChainDiagnostics diagnostics;
};

/// Wall-constrained samples of the fixed-trace spectrum.
ChainResult mcmc_sample(const EnsembleParams& params, const BarrierSpec& barrier,
                        const ChainConfig& cfg);

/// Pilot length used when ChainConfig::thin is empty.
std::int64_t pilot_sweeps(const ChainConfig& cfg);

/// Exact draw: Gaussian N x M amplitudes (real for beta = 1, complex for
/// beta = 2), normalized, spectrum of the reduced density matrix.
Spectrum direct_pure_state_spectrum(const EnsembleParams& params, Rng& rng);

struct TailEstimate {
  double zeta = 0.0;
  double p = 0.0;
  double std_error = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t draws = 0;
  /// No hits: p = 0 and upper_bound holds the 95% one-sided bound.
  bool zero_successes = false;
  double upper_bound = 0.0;
};

/// Fraction of exact draws with N * lambda_min > zeta.
TailEstimate estimate_tail_probability(const EnsembleParams& params, double zeta,
                                       std::uint64_t n_draws, Rng& rng);
/// As above for several walls, all counted on one shared set of draws.
std::vector<TailEstimate> estimate_tail_probabilities(const EnsembleParams& params,
                                                      std::span<const double> zetas,
                                                      std::uint64_t n_draws, Rng& rng);

}  // namespace sldp
