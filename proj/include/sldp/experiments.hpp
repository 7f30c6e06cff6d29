#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sldp/ensemble.hpp"
#include "sldp/io.hpp"
#include "sldp/types.hpp"

namespace sldp {

enum class Command { Density, Rate, Entropy, PtSpectrum, Negativity, Tail, Verify };

Command parse_command(const std::string& text);
std::string to_string(Command command);

/// Exit codes shared by every command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCriterionFail = 1;
inline constexpr int kExitUsage = 2;

struct ExperimentConfig {
  Command command = Command::Verify;
  EnsembleParams params;
  BarrierSpec barrier;
  std::optional<Bipartition> bipartition;
  ChainConfig chain;
  /// Output files are `<output_path>_<table>.csv` (and `.json`).
  std::filesystem::path output_path;
  io::Format format = io::Format::Csv;

  /// Matrices per wall for ptspectrum and negativity.
  std::size_t matrices = 1000;
  /// Exact draws for tail.
  std::uint64_t draws = 1000000;
  /// Walls for tail.
  std::vector<double> tail_zetas = {0.1, 0.2, 0.3};
  /// Wall spacing of the entropy, negativity and rate sweeps.
  double grid_step = 0.1;
  std::size_t bins = 50;
  /// Entropy sweep without the Monte Carlo column.
  bool analytic_only = false;
  /// ptspectrum: write rho and its partial transpose for the first matrix.
  std::optional<std::filesystem::path> matrix_dump;

  /// verify only.
  double tolerance_scale = 1.0;
  std::vector<std::string> criteria;

  /// Throws DomainError when a command-specific field is missing or invalid.
  void validate() const;
  /// Every field that affects results, in a fixed text form.
  std::string canonical() const;
};

struct RunResult {
  int exit_code = kExitPass;
  std::vector<std::filesystem::path> files;
  /// Human-readable lines for the terminal.
  std::vector<std::string> summary;
};

/// Regime curve, MCMC histogram of N*lambda and their distances.
/// Passes iff the bin-averaged L1 is below 0.05.
RunResult run_density(const ExperimentConfig& cfg);
/// Rate function and large-N tail exponent over a wall grid.
RunResult run_rate(const ExperimentConfig& cfg);
/// Analytic and Monte Carlo average entropy over a wall grid.
RunResult run_entropy_sweep(const ExperimentConfig& cfg);
/// Partial-transpose spectrum against the model semicircle.
/// Passes iff KS < 0.03 and, in regions I and II, the range is within 10% of 4|1 - zeta|.
RunResult run_ptspectrum(const ExperimentConfig& cfg);
/// Model and Monte Carlo log negativity over a wall grid.
/// Passes iff every Monte Carlo mean is within 0.02 of the model.
RunResult run_negativity_sweep(const ExperimentConfig& cfg);
/// Direct-sampling tail probabilities P(N lambda_min > zeta).
RunResult run_tail(const ExperimentConfig& cfg);
/// Acceptance suite; writes a JSON report.
RunResult run_verify(const ExperimentConfig& cfg);

RunResult run_experiment(const ExperimentConfig& cfg);

/// Walls of a sweep: MinWall k*step below 1, the uniform point zeta = 1,
/// then MaxWall 1 + k*step up to 4. Side::MinWall or Side::MaxWall keeps one half.
std::vector<BarrierSpec> sweep_walls(Side side, double step);

/// 1, 2, 3 for regions I, II, III and 0 without a wall.
int regime_code(const BarrierSpec& barrier);

/// Statistics of a partial-transpose ensemble in rescaled units x = N * mu.
struct PtSummary {
  double radius = 0.0;
  /// KS distance of the pooled PT eigenvalues from the model semicircle.
  double ks = 0.0;
  /// Mean over matrices of (max - min), after and before the transpose.
  double pt_range = 0.0;
  double spectrum_range = 0.0;
  /// 4 |1 - zeta| in regions I and II, NaN elsewhere.
  double expected_range = 0.0;
  double mean_log_negativity = 0.0;
  double log_negativity_se = 0.0;
  double npt_fraction = 0.0;
  std::vector<double> pt_values;
  std::vector<double> spectrum_values;
};

PtSummary summarize_pt(const PtEnsemble& ensemble, const BarrierSpec& barrier, int n);

/// Tail estimates from `draws` exact draws split into fixed chunks, chunk c
/// seeded by derive_seed(seed, kDirect, c); independent of the thread count.
std::vector<TailEstimate> chunked_tail_estimates(const EnsembleParams& params,
                                                 std::span<const double> zetas,
                                                 std::uint64_t draws, std::uint64_t seed);

/// (1 - zeta)^(N^2 - 1): exact P(N lambda_min > zeta) for beta = 2, N = M.
double square_tail_oracle(int n, double zeta);

struct NegativityPoint {
  double model = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  double npt_fraction = 0.0;
  ChainDiagnostics diagnostics;
};

/// Model and Monte Carlo log negativity at one wall. The chain stops once it
/// has one spectrum per matrix unless chain.max_samples is already set. At
/// the degenerate wall zeta = 1 every state is I/N and the result is exact.
NegativityPoint negativity_point(const EnsembleParams& params, const Bipartition& parts,
                                 const BarrierSpec& barrier, std::size_t matrices,
                                 ChainConfig chain);

}  // namespace sldp
