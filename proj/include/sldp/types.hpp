#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sldp {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an adaptive quadrature cannot reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

/// Dimensions of the bipartite pure state and the Dyson index.
struct EnsembleParams {
  int n = 100;
  int m = 100;
  double beta = 2.0;

  /// Q = M/N of the Marcenko-Pastur law.
  double ratio() const noexcept { return static_cast<double>(m) / n; }
  /// Exponent of each lambda_i in the joint density.
  double level_exponent() const noexcept { return 0.5 * beta * (m - n + 1) - 1.0; }

  void validate(int min_n = 2) const;
};

enum class Side { None, MinWall, MaxWall };

/// Wall on the rescaled eigenvalues x = N*lambda.
struct BarrierSpec {
  Side side = Side::None;
  double zeta = 0.0;

  static BarrierSpec none() { return {Side::None, 0.0}; }
  static BarrierSpec min_wall(double z) { return {Side::MinWall, z}; }
  static BarrierSpec max_wall(double z) { return {Side::MaxWall, z}; }

  void validate() const;
  /// A wall that leaves room for a non-degenerate spectrum.
  bool feasible() const noexcept;
};

enum class Regime { Unconstrained, MinWallI, MaxWallII, MaxWallIII };

Regime classify(const BarrierSpec& barrier);

std::string to_string(Side side);
std::string to_string(Regime regime);
Side parse_side(const std::string& text);

struct Bipartition {
  int n1 = 10;
  int n2 = 10;

  int dimension() const noexcept { return n1 * n2; }
};

struct ChainConfig {
  std::int64_t steps = 202000;
  std::int64_t burn_in = 2000;
  double step_width = 1e-3;
  /// Keep-every-k; empty selects ceil(2 tau) from a pilot run.
  std::optional<int> thin;
  /// Stop once this many thinned samples are kept; steps stays an upper bound.
  std::optional<std::size_t> max_samples;
  std::uint64_t seed = 20170601;

  void validate() const;
};

struct ChainDiagnostics {
  double acceptance_rate = 0.0;
  double autocorrelation_time = 0.5;
  std::size_t n_kept = 0;
  int thin = 1;
  double step_width = 0.0;
  bool acceptance_warning = false;
};

}  // namespace sldp
