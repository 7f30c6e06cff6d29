#include <CLI11.hpp>

#include <iostream>

#include "sldp/experiments.hpp"
#include "sldp/parallel.hpp"
#include "sldp/verify.hpp"

using namespace sldp;

int main(int argc, char** argv) {
  CLI::App app{"Constrained Schmidt spectra, entropies and log negativity of random pure states"};
  app.set_version_flag("--version", std::string(io::version()));

  std::string command;
  std::string side = "none";
  std::string format = "csv";
  double zeta = 0.0;
  int n = 100, m = 100, n1 = 0, n2 = 0;
  double beta = 2.0;
  std::int64_t sweeps = 200000, burn_in = 2000;
  int thin = 0;
  std::size_t matrices = 1000, max_samples = 0, bins = 50;
  std::uint64_t seed = ChainConfig{}.seed, draws = 1000000;
  double step_width = ChainConfig{}.step_width, grid_step = 0.1, tolerance_scale = 1.0;
  std::vector<double> tail_zetas;
  std::vector<std::string> criteria;
  std::string out, dump;
  bool analytic_only = false;

  app.add_option("--command", command, "Experiment to run")
      ->required()
      ->check(CLI::IsMember({"density", "rate", "entropy", "ptspectrum", "negativity", "tail", "verify"}));
  app.add_option("--zeta", zeta, "Wall position in rescaled units x = N lambda");
  app.add_option("--side", side, "Wall side: min (x >= zeta), max (x <= zeta) or none")
      ->check(CLI::IsMember({"min", "max", "none"}));
  auto* n_opt = app.add_option("--n", n, "Dimension N of the subsystem")->check(CLI::PositiveNumber);
  app.add_option("--m", m, "Dimension M of the environment (M >= N)")->check(CLI::PositiveNumber);
  app.add_option("--beta", beta, "Dyson index")->check(CLI::PositiveNumber);
  app.add_option("--n1", n1, "First factor of the bipartition of the N-level system");
  app.add_option("--n2", n2, "Second factor of the bipartition");
  app.add_option("--sweeps", sweeps, "Production sweeps after burn-in (one sweep = N proposals); ptspectrum and negativity default to running until each matrix has a thinned spectrum")
      ->check(CLI::PositiveNumber);
  app.add_option("--burn-in", burn_in, "Burn-in sweeps, also used to tune the step width")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--thin", thin, "Keep every k-th sweep; 0 picks ceil(2 tau) from a pilot run")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--matrices", matrices, "Matrices per wall for ptspectrum and negativity")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--out", out, "Output path prefix; files are <out>_<table>.csv/.json");
  app.add_option("--format", format, "csv (with a JSON mirror) or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--draws", draws, "Exact draws for tail")->check(CLI::PositiveNumber);
  app.add_option("--tail-zetas", tail_zetas, "Walls for tail (default 0.1 0.2 0.3)");
  app.add_option("--grid-step", grid_step, "Wall spacing of rate, entropy and negativity sweeps");
  app.add_option("--bins", bins, "Histogram bins")->check(CLI::PositiveNumber);
  app.add_option("--max-samples", max_samples,
                 "Stop each chain after this many kept spectra (0: run all sweeps)");
  app.add_option("--step-width", step_width, "Initial proposal width")->check(CLI::PositiveNumber);
  app.add_flag("--analytic-only", analytic_only, "entropy: skip the Monte Carlo column");
  app.add_option("--dump-matrices", dump,
                 "ptspectrum: write <prefix>_rho.bin and <prefix>_pt.bin for the first matrix");
  app.add_option("--tolerance-scale", tolerance_scale,
                 "verify: multiply every tolerance (test mode for corrupted tolerances)");
  app.add_option("--criteria", criteria, "verify: run only these criterion IDs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  ExperimentConfig cfg;
  try {
    cfg.command = parse_command(command);
    cfg.barrier = {parse_side(side), zeta};
    cfg.params = {n, m, beta};
    if (n1 > 0 || n2 > 0) {
      cfg.bipartition = Bipartition{n1, n2};
      if (n_opt->count() == 0) cfg.params.n = n1 * n2;
    }
    cfg.chain.burn_in = burn_in;
    cfg.chain.steps = burn_in + sweeps;
    cfg.chain.seed = seed;
    cfg.chain.step_width = step_width;
    if (thin > 0) cfg.chain.thin = thin;
    if (max_samples > 0) cfg.chain.max_samples = max_samples;
    // ensemble commands without --sweeps run until every matrix has its own thinned spectrum
    const bool ensemble =
        cfg.command == Command::PtSpectrum || cfg.command == Command::Negativity;
    if (ensemble && app.count("--sweeps") == 0) {
      cfg.chain.steps = burn_in + 50'000'000;
      if (!cfg.chain.max_samples) cfg.chain.max_samples = matrices;
    }
    cfg.output_path = out;
    cfg.format = io::parse_format(format);
    cfg.matrices = matrices;
    cfg.draws = draws;
    if (!tail_zetas.empty())
      cfg.tail_zetas = tail_zetas;
    else if (app.count("--zeta"))
      cfg.tail_zetas = {zeta};
    cfg.grid_step = grid_step;
    cfg.bins = bins;
    cfg.analytic_only = analytic_only;
    if (!dump.empty()) cfg.matrix_dump = dump;
    cfg.tolerance_scale = tolerance_scale;
    cfg.criteria = criteria;
    cfg.validate();
    if (cfg.command == Command::Verify)
      for (const std::string& id : cfg.criteria) verify::criterion_title(id);
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::cerr << "schmidt-ldp " << io::version() << ": " << command << ", seed " << seed << ", "
              << worker_count() << " worker(s)\n";
    const RunResult r = run_experiment(cfg);
    for (const std::string& line : r.summary) std::cout << line << '\n';
    for (const auto& f : r.files) std::cout << "wrote " << f.string() << '\n';
    return r.exit_code;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCriterionFail;
  }
}
