#include "sldp/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sldp/kernels.hpp"
#include "sldp/parallel.hpp"
#include "sldp/stats.hpp"

namespace sldp {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kResidualTol = 1e-9;

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DomainError(std::string(what) + " needs a square matrix");
}

double hermitian_defect(const ComplexMatrix& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

ComplexMatrix haar_unitary(int n, Rng& rng) {
  if (n < 1) throw DomainError("unitary dimension must be positive");
  const double scale = std::sqrt(0.5);
  ComplexMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = rng.normal();
      z(i, j) = {scale * re, scale * rng.normal()};
    }
  const Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : std::complex<double>(1.0);
  }
  return q;
}

ComplexMatrix assemble_density(const Spectrum& s, const ComplexMatrix& u) {
  require_square(u, "assemble_density");
  if (static_cast<std::size_t>(u.rows()) != s.size())
    throw DomainError("assemble_density: unitary and spectrum dimensions differ");
  const Eigen::Map<const Eigen::VectorXd> d(s.values().data(), static_cast<Eigen::Index>(s.size()));
  ComplexMatrix rho = (u * d.cast<std::complex<double>>().asDiagonal()) * u.adjoint();
  const ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
  return sym;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Bipartition& parts,
                                PtSubsystem which) {
  require_square(rho, "partial_transpose");
  const Eigen::Index n1 = parts.n1;
  const Eigen::Index n2 = parts.n2;
  if (n1 < 1 || n2 < 1 || rho.rows() != n1 * n2)
    throw DomainError("partial_transpose: matrix dimension " + std::to_string(rho.rows()) +
                      " is not n1 * n2 = " + std::to_string(n1 * n2));
  ComplexMatrix out(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index a = 0; a < n2; ++a)
      for (Eigen::Index j = 0; j < n1; ++j)
        for (Eigen::Index b = 0; b < n2; ++b) {
          const auto& v = rho(i * n2 + a, j * n2 + b);
          if (which == PtSubsystem::Second)
            out(i * n2 + b, j * n2 + a) = v;
          else
            out(j * n2 + a, i * n2 + b) = v;
        }
  return out;
}

std::vector<double> hermitian_spectrum(const ComplexMatrix& h) {
  require_square(h, "hermitian_spectrum");
  if (hermitian_defect(h) > kHermitianTol) throw DomainError("matrix is not Hermitian");
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigenvalue iteration failed", 0.0);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigensystem");
  if (hermitian_defect(h) > kHermitianTol) throw DomainError("matrix is not Hermitian");
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericError("eigenvalue iteration failed", 0.0);
  Eigensystem out;
  const Eigen::VectorXd& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  out.vectors = solver.eigenvectors();
  const ComplexMatrix rebuilt =
      out.vectors * ev.cast<std::complex<double>>().asDiagonal() * out.vectors.adjoint();
  out.residual = h.size() ? (h - rebuilt).cwiseAbs().maxCoeff() : 0.0;
  if (out.residual > kResidualTol)
    throw NumericError("eigendecomposition reconstruction residual too large", out.residual);
  return out;
}

double log_negativity(std::span<const double> pt_spectrum) {
  if (pt_spectrum.empty()) throw DomainError("log_negativity of an empty spectrum");
  const double negative = kernels::negative_part_sum(pt_spectrum);
  if (negative == 0.0) return 0.0;
  const double trace = std::accumulate(pt_spectrum.begin(), pt_spectrum.end(), 0.0);
  // sum |mu| = trace + 2 * negative part
  return std::log1p(2.0 * negative / trace);
}

std::vector<double> gue_model_sample(int n, double purity, Rng& rng) {
  if (n < 1) throw DomainError("GUE dimension must be positive");
  const double inv_n = 1.0 / n;
  if (!(purity >= inv_n * (1.0 - 1e-12) && purity <= 1.0))
    throw DomainError("purity must lie in [1/N, 1]");
  const double sigma2 = std::max(0.0, purity * inv_n - inv_n * inv_n) * inv_n;
  const double sigma = std::sqrt(sigma2);
  const double off = std::sqrt(0.5 * sigma2);
  ComplexMatrix y(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    y(j, j) = inv_n + sigma * rng.normal();
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double re = rng.normal();
      const std::complex<double> v(off * re, off * rng.normal());
      y(i, j) = v;
      y(j, i) = std::conj(v);
    }
  }
  return hermitian_spectrum(y);
}

PtEnsemble sample_pt_ensemble(const EnsembleParams& params, const Bipartition& parts,
                              const BarrierSpec& barrier, std::size_t n_matrices,
                              const ChainConfig& cfg) {
  if (parts.n1 < 1 || parts.n2 < 1 || parts.dimension() != params.n)
    throw DomainError("bipartition n1 * n2 must equal N");
  if (n_matrices == 0) throw DomainError("need at least one matrix");

  ChainResult chain = mcmc_sample(params, barrier, cfg);
  const std::size_t kept = chain.samples.size();
  if (kept < n_matrices)
    throw DomainError("chain emitted " + std::to_string(kept) + " spectra but " +
                      std::to_string(n_matrices) + " matrices were requested");

  PtEnsemble out;
  out.diagnostics = chain.diagnostics;
  out.samples.resize(n_matrices);
  // even stride over the emitted states keeps the used spectra far apart
  const std::size_t stride = kept / n_matrices;
  parallel_for(n_matrices, [&](std::size_t k) {
    Rng rng(derive_seed(cfg.seed, streams::kUnitary, k));
    const Spectrum& s = chain.samples[k * stride];
    const ComplexMatrix u = haar_unitary(params.n, rng);
    const ComplexMatrix rho = assemble_density(s, u);
    PtSample& sample = out.samples[k];
    sample.spectrum.assign(s.values().begin(), s.values().end());
    sample.pt_spectrum = hermitian_spectrum(partial_transpose(rho, parts));
    sample.log_negativity = log_negativity(sample.pt_spectrum);
  });
  return out;
}

NegativityEstimate average_negativity(const EnsembleParams& params, const Bipartition& parts,
                                      const BarrierSpec& barrier, std::size_t n_matrices,
                                      const ChainConfig& cfg) {
  const PtEnsemble ensemble = sample_pt_ensemble(params, parts, barrier, n_matrices, cfg);
  std::vector<double> values;
  values.reserve(ensemble.samples.size());
  for (const PtSample& s : ensemble.samples) values.push_back(s.log_negativity);
  NegativityEstimate out;
  out.mean = stats::mean(values);
  out.std_error = stats::std_error(values);
  out.n_matrices = values.size();
  out.diagnostics = ensemble.diagnostics;
  return out;
}

}  // namespace sldp
