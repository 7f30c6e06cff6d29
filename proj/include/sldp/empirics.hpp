#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sldp/density.hpp"
#include "sldp/types.hpp"

namespace sldp {

struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  /// Every sample offered, including the out-of-range ones.
  std::uint64_t total = 0;
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;

  std::size_t bins() const noexcept { return counts.size(); }
  std::uint64_t in_range() const noexcept { return total - underflow - overflow; }
  double width(std::size_t k) const { return edges[k + 1] - edges[k]; }
  double midpoint(std::size_t k) const { return 0.5 * (edges[k] + edges[k + 1]); }
  /// Density normalized by the in-range count, so it integrates to one.
  std::vector<double> density() const;
};

/// Equal-width bins on `range`; the last bin is closed on the right.
Histogram histogram(std::span<const double> samples, std::size_t n_bins, Interval range);

struct CurveDistance {
  /// L1 between the histogram and the curve averaged over each bin, plus the
  /// sample fraction that fell outside the histogram range.
  double l1 = 0.0;
  /// L1 with the curve sampled at bin midpoints instead of bin-averaged.
  double l1_midpoint = 0.0;
  /// Sup distance between CDFs, taken over the bin edges.
  double ks = 0.0;
  /// Histogram range and curve support do not overlap.
  bool disjoint = false;
};

CurveDistance compare_density(const Histogram& h, const DensityCurve& curve);

/// Exact KS distance of raw samples against the curve's CDF.
double ks_distance(std::span<const double> samples, const DensityCurve& curve);

/// PV integral of the MinWall density against 1/(x - x') minus mu_1(zeta).
/// x must be more than 1e-3 inside the support.
double pv_saddle_residual(double zeta, double x);

/// Log potential U(x) = integral of rho(x') ln|x - x'|.
double log_potential(const DensityCurve& curve, double x);

/// -1/2 double integral of rho rho ln|x - x'|. Throws DomainError when the
/// curve is not normalized, lacks unit first moment, or leaks below the wall.
double energy_functional(const DensityCurve& curve, double zeta);

}  // namespace sldp
