#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "sldp/rng.hpp"
#include "sldp/sampler.hpp"
#include "sldp/types.hpp"

namespace sldp {

using ComplexMatrix = Eigen::MatrixXcd;

/// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
/// diagonal phases of R folded back into Q.
ComplexMatrix haar_unitary(int n, Rng& rng);

/// U diag(s) U^dagger, symmetrized so the result is exactly Hermitian.
ComplexMatrix assemble_density(const Spectrum& s, const ComplexMatrix& u);

enum class PtSubsystem { First, Second };

/// Partial transpose on one factor of C^{n1} (x) C^{n2}; composite index
/// i * n2 + alpha. The default transposes the second factor.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Bipartition& parts,
                                PtSubsystem which = PtSubsystem::Second);

/// Ascending eigenvalues of a Hermitian matrix. Throws DomainError when the
/// input deviates from Hermitian by more than 1e-10.
std::vector<double> hermitian_spectrum(const ComplexMatrix& h);

struct Eigensystem {
  std::vector<double> values;
  ComplexMatrix vectors;
  /// max |H - V diag(values) V^dagger|
  double residual = 0.0;
};

/// Full decomposition; throws NumericError if the reconstruction residual
/// exceeds 1e-9.
Eigensystem hermitian_eigensystem(const ComplexMatrix& h);

/// ln of the trace norm, normalized by the trace. Exactly zero when no
/// eigenvalue is negative.
double log_negativity(std::span<const double> pt_spectrum);

/// Eigenvalues of Y = X + I/N for GUE X scaled so that <tr X^2> = purity - 1/N.
std::vector<double> gue_model_sample(int n, double purity, Rng& rng);

/// One constrained random rho_12 reduced to the numbers the experiments need.
struct PtSample {
  std::vector<double> spectrum;     ///< eigenvalues of rho_12, ascending
  std::vector<double> pt_spectrum;  ///< eigenvalues of the partial transpose
  double log_negativity = 0.0;
};

struct PtEnsemble {
  std::vector<PtSample> samples;
  ChainDiagnostics diagnostics;
};

/// Spectra from one wall-constrained chain, spread evenly over its emitted
/// states, each dressed with an independent Haar unitary (seeded per matrix).
PtEnsemble sample_pt_ensemble(const EnsembleParams& params, const Bipartition& parts,
                              const BarrierSpec& barrier, std::size_t n_matrices,
                              const ChainConfig& cfg);

struct NegativityEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_matrices = 0;
  ChainDiagnostics diagnostics;
};

NegativityEstimate average_negativity(const EnsembleParams& params, const Bipartition& parts,
                                      const BarrierSpec& barrier, std::size_t n_matrices,
                                      const ChainConfig& cfg);

}  // namespace sldp
