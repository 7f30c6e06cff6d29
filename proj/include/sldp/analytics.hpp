#pragma once

#include <utility>

#include "sldp/density.hpp"
#include "sldp/types.hpp"

/// Closed-form large-N results for the fixed-trace (Schmidt) spectrum.
///
/// All quantities are in rescaled units x = N * lambda. Walls follow the
/// convention MinWall: every x >= zeta (0 <= zeta <= 1) and MaxWall: every
/// x <= zeta (1 <= zeta <= 4).
namespace sldp::analytics {

/// Marcenko-Pastur density in x = N * lambda for Q = M/N; zero off support.
double mp_density(double x, const EnsembleParams& params);
Interval mp_support(const EnsembleParams& params);

/// Equilibrium density of the constrained Coulomb gas.
double constrained_density(double x, const BarrierSpec& barrier);
Interval density_support(const BarrierSpec& barrier);
/// Analytic curve for the regime; throws for the point-mass walls at zeta = 1.
DensityCurve regime_density(const BarrierSpec& barrier, std::size_t grid_points = 512);

/// Rate function Phi(zeta). Returns +infinity at zeta = 1 on either side.
double rate_function(const BarrierSpec& barrier);

/// log P(wall) ~ -beta N^2 Phi(zeta).
double tail_log_probability(const EnsembleParams& params, const BarrierSpec& barrier);

struct Multipliers {
  double mu0;
  double mu1;
};

/// Normalization (mu0) and trace (mu1) multipliers of the MinWall saddle.
Multipliers lagrange_multipliers(double zeta);

/// Saddle point energy 3/4 - ln(1 - zeta)/2 of the MinWall problem.
double saddle_energy(double zeta);

/// Average von Neumann entropy (nats) of an N-level subsystem under the wall.
double avg_entropy(const BarrierSpec& barrier, int n);

/// Exact finite-size average entropy of an unconstrained random pure state.
double page_entropy(const EnsembleParams& params);

/// <tr rho_A^2> = (N + M)/(NM + 1).
double avg_purity_unconstrained(const EnsembleParams& params);

/// Rescaled purity P with <tr rho^2> = P/N.
double rescaled_purity(const BarrierSpec& barrier);

/// Rescaled semicircle radius 2 sqrt(P - 1) of the GUE-shift model.
double model_radius(const BarrierSpec& barrier);
double radius_from_purity(double rescaled_purity);

/// Semicircle centred at 1 with rescaled radius r.
double semicircle_density(double x, double radius);
double semicircle_cdf(double x, double radius);

/// Average log negativity predicted by the shifted-semicircle model.
double model_log_negativity(double radius);

/// MaxWall position whose rescaled purity equals that of MinWall zeta1 < 1/2.
double matching_zeta(double zeta1);

/// Walls at which the model radius equals one: (1/2, 4 - sqrt 6).
std::pair<double, double> transition_points();

}  // namespace sldp::analytics
