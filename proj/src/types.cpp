#include "sldp/types.hpp"

#include <cmath>

namespace sldp {

void EnsembleParams::validate(int min_n) const {
  if (n < min_n) throw DomainError("N must be at least " + std::to_string(min_n));
  if (m < n) throw DomainError("M must satisfy M >= N");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
}

void BarrierSpec::validate() const {
  switch (side) {
    case Side::None:
      return;
    case Side::MinWall:
      if (!(zeta >= 0.0 && zeta <= 1.0))
        throw DomainError("MinWall position must lie in [0, 1], got " + std::to_string(zeta));
      return;
    case Side::MaxWall:
      if (!(zeta >= 1.0 && zeta <= 4.0))
        throw DomainError("MaxWall position must lie in [1, 4], got " + std::to_string(zeta));
      return;
  }
}

bool BarrierSpec::feasible() const noexcept {
  switch (side) {
    case Side::None:
      return true;
    case Side::MinWall:
      return zeta >= 0.0 && zeta < 1.0;
    case Side::MaxWall:
      return zeta > 1.0 && zeta <= 4.0;
  }
  return false;
}

Regime classify(const BarrierSpec& barrier) {
  barrier.validate();
  switch (barrier.side) {
    case Side::None:
      return Regime::Unconstrained;
    case Side::MinWall:
      return Regime::MinWallI;
    case Side::MaxWall:
      // the II and III densities coincide at 4/3; the boundary belongs to III
      return barrier.zeta < 4.0 / 3.0 ? Regime::MaxWallII : Regime::MaxWallIII;
  }
  return Regime::Unconstrained;
}

std::string to_string(Side side) {
  switch (side) {
    case Side::None:
      return "none";
    case Side::MinWall:
      return "min";
    case Side::MaxWall:
      return "max";
  }
  return "none";
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Unconstrained:
      return "unconstrained";
    case Regime::MinWallI:
      return "I";
    case Regime::MaxWallII:
      return "II";
    case Regime::MaxWallIII:
      return "III";
  }
  return "unconstrained";
}

Side parse_side(const std::string& text) {
  if (text == "none") return Side::None;
  if (text == "min") return Side::MinWall;
  if (text == "max") return Side::MaxWall;
  throw std::invalid_argument("unknown wall side '" + text + "' (expected min, max or none)");
}

void ChainConfig::validate() const {
  if (!(steps > burn_in)) throw DomainError("chain steps must exceed burn_in");
  if (burn_in < 0) throw DomainError("burn_in must be non-negative");
  if (!(step_width > 0.0)) throw DomainError("step_width must be positive");
  if (thin && *thin < 1) throw DomainError("thin must be at least 1");
  if (max_samples && *max_samples == 0) throw DomainError("max_samples must be positive");
}

}  // namespace sldp
