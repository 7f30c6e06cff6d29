#include "sldp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <map>
#include <tuple>

#include "sldp/analytics.hpp"
#include "sldp/empirics.hpp"
#include "sldp/experiments.hpp"
#include "sldp/stats.hpp"

namespace sldp::verify {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct Context {
  const VerifyOptions& opts;
  CriterionResult& result;

  double tol(double t) const { return t * opts.tolerance_scale; }
  std::uint64_t seed(std::uint64_t index) const {
    return derive_seed(opts.seed, streams::kSweepPoint, index);
  }
  bool check(bool ok, const std::string& text) const {
    result.checks.push_back((ok ? "ok    " : "FAIL  ") + text);
    if (!ok) result.passed = false;
    return ok;
  }
  Json& m() const { return result.measurements; }
};

BarrierSpec wall_for(double zeta) {
  return zeta < 1.0 ? BarrierSpec::min_wall(zeta) : BarrierSpec::max_wall(zeta);
}

void ac1_density(const Context& c) {
  const EnsembleParams params{100, 100, 2.0};
  const BarrierSpec wall = BarrierSpec::min_wall(0.5);
  ChainConfig chain;
  chain.steps = 202000;
  chain.burn_in = 2000;
  chain.seed = c.seed(1);
  const ChainResult r = mcmc_sample(params, wall, chain);
  std::vector<double> xs;
  for (const Spectrum& s : r.samples)
    for (double v : s.values()) xs.push_back(params.n * v);
  const DensityCurve curve = analytics::regime_density(wall);
  const Histogram h = histogram(xs, 50, curve.support());
  const CurveDistance d = compare_density(h, curve);
  const double ks = ks_distance(xs, curve);
  c.check(d.l1 < c.tol(0.05),
          fmt("L1 %.4f < %.4g (50 bins, curve bin-averaged; midpoint-sampled %.4f)", d.l1,
              c.tol(0.05), d.l1_midpoint));
  c.check(ks < c.tol(0.03), fmt("KS %.4f < %.4g", ks, c.tol(0.03)));
  c.m()["l1"] = d.l1;
  c.m()["l1_midpoint"] = d.l1_midpoint;
  c.m()["ks"] = ks;
  c.m()["spectra"] = r.samples.size();
  c.m()["acceptance_rate"] = r.diagnostics.acceptance_rate;
  c.m()["autocorrelation_time"] = r.diagnostics.autocorrelation_time;
  c.m()["thin"] = r.diagnostics.thin;
}

void ac2_golden(const Context& c) {
  using namespace analytics;
  const double ln100 = std::log(100.0);
  const auto [t1, t2] = transition_points();
  struct Golden {
    const char* name;
    double value;
    double expected;
    double tol;
  };
  const Golden rows[] = {
      {"Phi_I(0)", rate_function(BarrierSpec::min_wall(0.0)), 0.0, 1e-12},
      {"Phi_III(4)", rate_function(BarrierSpec::max_wall(4.0)), 0.0, 1e-12},
      {"<S>(4, N=100)", avg_entropy(BarrierSpec::max_wall(4.0), 100), ln100 - 0.5, 1e-12},
      {"<S>(1, N=100)", avg_entropy(BarrierSpec::min_wall(1.0), 100), ln100, 1e-12},
      {"<S>(4/3, N=100)", avg_entropy(BarrierSpec::max_wall(4.0 / 3.0), 100),
       std::log(300.0) - 7.0 / 6.0, 1e-9},
      {"E_LN(R=2)", model_log_negativity(2.0), 0.148702, 5e-6},
      {"E_LN(R=1.75)", model_log_negativity(1.75), 0.0919, 5e-4},
      {"matching_zeta(1/8)", matching_zeta(0.125), 2.6307, 5e-4},
      {"transition 1", t1, 0.5, 1e-12},
      {"transition 2", t2, 4.0 - std::sqrt(6.0), 1e-12},
  };
  for (const Golden& g : rows) {
    const double err = std::abs(g.value - g.expected);
    c.check(err <= c.tol(g.tol),
            fmt("%s = %.10g, expected %.10g, |diff| %.2e <= %.2e", g.name, g.value, g.expected,
                err, c.tol(g.tol)));
    c.m()[g.name] = g.value;
  }
}

void ac3_saddle(const Context& c) {
  double worst_pv = 0.0;
  for (double z : {0.0, 0.25, 0.5, 0.75}) {
    const Interval s = analytics::density_support(BarrierSpec::min_wall(z));
    for (int k = 1; k < 40; ++k)
      worst_pv = std::max(worst_pv, std::abs(pv_saddle_residual(z, s.lo + s.width() * k / 40.0)));
  }
  c.check(worst_pv < c.tol(1e-3),
          fmt("PV residual max %.2e < %.2g on 39 interior points for zeta in {0, .25, .5, .75}",
              worst_pv, c.tol(1e-3)));
  c.m()["pv_residual_max"] = worst_pv;

  const double e0 = energy_functional(analytics::regime_density(BarrierSpec::min_wall(0.0)), 0.0);
  Json energies = Json::array();
  for (double z : {0.0, 0.25, 0.5, 0.75}) {
    const BarrierSpec wall = BarrierSpec::min_wall(z);
    const double e = z == 0.0 ? e0 : energy_functional(analytics::regime_density(wall), z);
    const double target = analytics::saddle_energy(z);
    c.check(std::abs(e - target) < c.tol(1e-4),
            fmt("energy(%.2f) = %.6f vs 3/4 - ln(1-zeta)/2 = %.6f, |diff| %.2e < %.2g", z, e,
                target, std::abs(e - target), c.tol(1e-4)));
    if (z > 0.0) {
      const double diff = e - e0 - analytics::rate_function(wall);
      c.check(std::abs(diff) < c.tol(2e-4),
              fmt("energy(%.2f) - energy(0) - Phi_I = %.2e, |.| < %.2g", z, diff, c.tol(2e-4)));
    }
    energies.push_back({{"zeta", z}, {"energy", e}, {"target", target}});
  }
  c.m()["energies"] = energies;

  // (1, -2, 1) bump triples keep mass and first moment
  const double z = 0.5;
  const DensityCurve base = analytics::regime_density(BarrierSpec::min_wall(z));
  const double e = energy_functional(base, z);
  auto bump = [](double x, double centre) {
    const double t = (x - centre) / 0.2;
    return std::abs(t) < 1.0 ? std::pow(1.0 - t * t, 3) : 0.0;
  };
  double smallest_rise = std::numeric_limits<double>::infinity();
  for (double centre : {1.1, 1.5, 1.9})
    for (double amp : {1e-2, -1e-2}) {
      const DensityCurve perturbed(base.support(), [&, centre, amp](double x) {
        const double g = bump(x, centre - 0.3) - 2.0 * bump(x, centre) + bump(x, centre + 0.3);
        return analytics::constrained_density(x, BarrierSpec::min_wall(z)) + amp * g;
      });
      smallest_rise = std::min(smallest_rise, energy_functional(perturbed, z) - e);
    }
  c.check(smallest_rise > 0.0,
          fmt("energy rises under 6 feasible perturbations (amplitude 1e-2), smallest rise %.2e",
              smallest_rise));
  c.m()["smallest_energy_rise"] = smallest_rise;
}

void ac4_tail(const Context& c) {
  const EnsembleParams params{4, 4, 2.0};
  const std::vector<double> zetas = {0.1, 0.2, 0.3};
  const auto est = chunked_tail_estimates(params, zetas, 1000000, c.seed(4));
  Json rows = Json::array();
  for (const TailEstimate& e : est) {
    const double exact = square_tail_oracle(params.n, e.zeta);
    const double phi = analytics::rate_function(BarrierSpec::min_wall(e.zeta));
    const double rate = -std::log(e.p) / (params.beta * params.n * params.n);
    const double sigmas = std::abs(e.p - exact) / e.std_error;
    c.check(e.hits > 0 && sigmas <= 3.0 * c.opts.tolerance_scale,
            fmt("zeta %.1f: p = %.6f +- %.6f (%llu/%llu), exact (1-zeta)^15 = %.6f, %.2f sigma", e.zeta,
                e.p, e.std_error, static_cast<unsigned long long>(e.hits),
                static_cast<unsigned long long>(e.draws), exact, sigmas));
    const double rel = std::abs(rate / phi - 1.0);
    c.check(rel <= c.tol(0.25),
            fmt("zeta %.1f: -ln p / (beta N^2) = %.5f vs Phi_I = %.5f, rel. error %.3f <= %.3g",
                e.zeta, rate, phi, rel, c.tol(0.25)));
    rows.push_back({{"zeta", e.zeta}, {"p", e.p}, {"std_error", e.std_error}, {"exact", exact},
                    {"rate", rate}, {"phi", phi}});
  }
  c.m()["estimates"] = rows;
}

void ac5_nonanalytic(const Context& c) {
  const double h = 1e-5;
  const double k = 4.0 / 3.0;
  auto s = [](double z) { return analytics::avg_entropy(BarrierSpec::max_wall(z), 100); };
  const double left = (s(k) - 2.0 * s(k - h) + s(k - 2.0 * h)) / (h * h);
  const double right = (s(k + 2.0 * h) - 2.0 * s(k + h) + s(k)) / (h * h);
  const double el = std::abs(left / -4.5 - 1.0);
  const double er = std::abs(right / 0.5625 - 1.0);
  c.check(el <= c.tol(0.05), fmt("left second derivative %.5f vs -4.5, rel. error %.4f <= %.3g",
                                 left, el, c.tol(0.05)));
  c.check(er <= c.tol(0.05), fmt("right second derivative %.5f vs 0.5625, rel. error %.4f <= %.3g",
                                 right, er, c.tol(0.05)));
  c.m()["left"] = left;
  c.m()["right"] = right;
  c.m()["step"] = h;
}

void ac6_pt_spectrum(const Context& c) {
  const EnsembleParams params{100, 100, 2.0};
  const Bipartition parts{10, 10};
  Json rows = Json::array();
  std::uint64_t index = 600;
  for (double z : {0.2, 0.5, 0.8, 1.2, 2.0, 3.0}) {
    const BarrierSpec wall = wall_for(z);
    // one thinned spectrum per matrix; steps is only a ceiling
    ChainConfig chain;
    chain.steps = 50'000'000;
    chain.burn_in = 2000;
    chain.max_samples = 1000;
    chain.seed = c.seed(index++);
    const PtEnsemble e = sample_pt_ensemble(params, parts, wall, 1000, chain);
    const PtSummary s = summarize_pt(e, wall, params.n);
    c.check(s.ks < c.tol(0.03),
            fmt("zeta %.1f: KS %.4f < %.3g against semicircle R = %.4f", z, s.ks, c.tol(0.03),
                s.radius));
    if (!std::isnan(s.expected_range)) {
      const double ea = std::abs(s.pt_range / s.expected_range - 1.0);
      const double eb = std::abs(s.spectrum_range / s.expected_range - 1.0);
      c.check(ea <= c.tol(0.1) && eb <= c.tol(0.1),
              fmt("zeta %.1f: mean range after PT %.3f, before %.3f, 4|1-zeta| = %.3f, "
                  "rel. errors %.3f, %.3f <= %.3g",
                  z, s.pt_range, s.spectrum_range, s.expected_range, ea, eb, c.tol(0.1)));
    }
    rows.push_back({{"zeta", z},
                    {"radius", s.radius},
                    {"ks", s.ks},
                    {"pt_range", s.pt_range},
                    {"spectrum_range", s.spectrum_range},
                    {"expected_range", std::isnan(s.expected_range) ? Json() : Json(s.expected_range)},
                    {"thin", e.diagnostics.thin},
                    {"acceptance_rate", e.diagnostics.acceptance_rate}});
  }
  c.m()["walls"] = rows;
}

void ac7_negativity(const Context& c) {
  const EnsembleParams params{100, 100, 2.0};
  const Bipartition parts{10, 10};
  constexpr std::size_t kMatrices = 1000;
  std::uint64_t index = 700;
  std::map<double, NegativityPoint> points;
  auto eval = [&](double z) -> const NegativityPoint& {
    z = std::round(z * 1e6) / 1e6;
    auto it = points.find(z);
    if (it != points.end()) return it->second;
    ChainConfig chain;
    chain.steps = 50'000'000;
    chain.burn_in = 2000;
    chain.seed = c.seed(index++);
    return points[z] = negativity_point(params, parts, wall_for(z), kMatrices, chain);
  };

  double worst = 0.0, worst_z = 0.0, plateau = 0.0, plateau_z = 0.0;
  Json rows = Json::array();
  for (const BarrierSpec& b : sweep_walls(Side::None, 0.1)) {
    const NegativityPoint& p = eval(b.zeta);
    const double d = std::abs(p.mean - p.model);
    if (d > worst) worst = d, worst_z = b.zeta;
    if (b.zeta >= 0.55 - 1e-9 && b.zeta <= 1.5 + 1e-9 && p.mean > plateau)
      plateau = p.mean, plateau_z = b.zeta;
    rows.push_back({{"zeta", b.zeta}, {"model", p.model}, {"mc", p.mean}, {"stderr", p.std_error},
                    {"npt_fraction", p.npt_fraction}});
  }
  c.check(worst < c.tol(0.02),
          fmt("max |MC - model| over the 0.1 grid = %.4f (at zeta %.1f) < %.3g", worst, worst_z,
              c.tol(0.02)));
  c.check(plateau < c.tol(0.005),
          plateau > 0.0
              ? fmt("max MC mean on [0.55, 1.5] = %.5f (at zeta %.2f) < %.3g", plateau,
                    plateau_z, c.tol(0.005))
              : fmt("MC mean is exactly 0 on [0.55, 1.5] (every state PPT), < %.3g",
                    c.tol(0.005)));

  // departure: edge of the region where every sampled state is PPT, bisected
  // from the bracketing 0.1-grid points to a width of 0.0125
  auto departed = [&](double z) { return eval(z).npt_fraction > 0.0; };
  const auto [t1, t2] = analytics::transition_points();
  Json edges = Json::array();
  for (auto [lo, hi, target] : {std::tuple{0.4, 0.6, t1}, std::tuple{1.5, 1.7, t2}}) {
    const bool rising = !departed(lo);
    // find the grid bracket first
    double a = lo, b = hi;
    for (double z = lo; z < hi - 1e-9; z += 0.1)
      if (departed(z) != departed(z + 0.1)) {
        a = z;
        b = z + 0.1;
        break;
      }
    const bool bracketed = departed(a) != departed(b);
    while (bracketed && b - a > 0.0125 + 1e-12) {
      const double mid = std::round(0.5 * (a + b) * 1e6) / 1e6;
      (departed(mid) == departed(a) ? a : b) = mid;
    }
    const double edge = 0.5 * (a + b);
    c.check(bracketed && std::abs(edge - target) <= c.tol(0.05),
            fmt("departure from zero near %.4f: all-PPT edge bracketed in [%.4f, %.4f], "
                "estimate %.4f, |diff| %.4f <= %.3g",
                target, a, b, edge, std::abs(edge - target), c.tol(0.05)));
    edges.push_back({{"transition", target}, {"lo", a}, {"hi", b}, {"estimate", edge},
                     {"rising_with_zeta", rising}});
  }
  c.m()["grid"] = rows;
  c.m()["departures"] = edges;
  c.m()["points_evaluated"] = points.size();
}

void ac8_cross_sampler(const Context& c) {
  Json rows = Json::array();
  for (int n : {3, 4, 5}) {
    const EnsembleParams params{n, n, 2.0};
    constexpr std::size_t kSamples = 20000;
    ChainConfig chain;
    chain.burn_in = 2000;
    chain.steps = 50'000'000;
    chain.max_samples = kSamples;
    chain.seed = c.seed(800 + n);
    const ChainResult mc = mcmc_sample(params, BarrierSpec::none(), chain);
    Rng rng(c.seed(850 + n));
    std::vector<double> mc_min, mc_max, mc_purity, d_min, d_max, d_purity;
    for (const Spectrum& s : mc.samples) {
      mc_min.push_back(s.min());
      mc_max.push_back(s.max());
      mc_purity.push_back(s.purity());
    }
    for (std::size_t k = 0; k < kSamples; ++k) {
      const Spectrum s = direct_pure_state_spectrum(params, rng);
      d_min.push_back(s.min());
      d_max.push_back(s.max());
      d_purity.push_back(s.purity());
    }
    const double ne = kSamples / 2.0;
    for (auto [name, a, b] : {std::tuple{"lambda_min", &mc_min, &d_min},
                              std::tuple{"lambda_max", &mc_max, &d_max}}) {
      const stats::KsResult ks = stats::ks_two_sample(*a, *b);
      // a tighter tolerance shrinks the accepted distance
      const double p = c.opts.tolerance_scale > 0.0
                           ? stats::kolmogorov_pvalue(ks.statistic / c.opts.tolerance_scale, ne)
                           : 0.0;
      c.check(p > 0.01, fmt("N = %d, %s: two-sample KS D = %.4f, p = %.3f > 0.01", n, name,
                            ks.statistic, p));
    }
    const double expected = analytics::avg_purity_unconstrained(params);
    // the kept series is thinned at 2 tau but may retain some correlation
    const double tau = stats::autocorrelation_time(mc_purity);
    const double mc_se = stats::std_error(mc_purity) * std::sqrt(std::max(1.0, 2.0 * tau));
    const double mc_mean = stats::mean(mc_purity);
    const double d_mean = stats::mean(d_purity);
    const double d_se = stats::std_error(d_purity);
    const double k = 3.0 * c.opts.tolerance_scale;
    c.check(std::abs(mc_mean - expected) <= k * mc_se,
            fmt("N = %d: MCMC mean purity %.5f +- %.5f vs (N+M)/(NM+1) = %.5f (%.2f s.e.)", n,
                mc_mean, mc_se, expected, std::abs(mc_mean - expected) / mc_se));
    c.check(std::abs(d_mean - expected) <= k * d_se,
            fmt("N = %d: direct mean purity %.5f +- %.5f vs %.5f (%.2f s.e.)", n, d_mean, d_se,
                expected, std::abs(d_mean - expected) / d_se));
    rows.push_back({{"n", n},
                    {"mcmc_samples", mc.samples.size()},
                    {"thin", mc.diagnostics.thin},
                    {"mcmc_purity", mc_mean},
                    {"direct_purity", d_mean},
                    {"expected_purity", expected}});
  }
  c.m()["dimensions"] = rows;
}

void ac9_invariants(const Context& c) {
  double worst_mass = 0.0, worst_moment = 0.0;
  int walls = 0;
  for (int k = 0; k <= 80; ++k) {
    const double z = 0.05 * k;
    if (std::abs(z - 1.0) < 1e-12) continue;
    const DensityCurve curve = analytics::regime_density(wall_for(z));
    worst_mass = std::max(worst_mass, std::abs(curve.mass() - 1.0));
    worst_moment = std::max(worst_moment, std::abs(curve.moment(1) - 1.0));
    ++walls;
  }
  c.check(worst_mass <= c.tol(1e-6) && worst_moment <= c.tol(1e-6),
          fmt("%d walls on the 0.05 grid: max |mass - 1| %.2e, max |first moment - 1| %.2e <= %.2g",
              walls, worst_mass, worst_moment, c.tol(1e-6)));

  double worst_reflect = 0.0, worst_rate = 0.0;
  for (int k = 0; k < 34; ++k) {
    const double z = 2.0 / 3.0 + 0.01 * k;
    const BarrierSpec lo = BarrierSpec::min_wall(z);
    const BarrierSpec hi = BarrierSpec::max_wall(2.0 - z);
    const Interval s = analytics::density_support(lo);
    for (int j = 1; j < 50; ++j) {
      const double x = s.lo + s.width() * j / 50.0;
      worst_reflect = std::max(worst_reflect, std::abs(analytics::constrained_density(x, lo) -
                                                       analytics::constrained_density(2.0 - x, hi)));
    }
    worst_rate = std::max(worst_rate,
                          std::abs(analytics::rate_function(lo) - analytics::rate_function(hi)));
  }
  c.check(worst_reflect <= c.tol(1e-9) && worst_rate <= c.tol(1e-9),
          fmt("reflection zeta -> 2 - zeta, x -> 2 - x: density %.2e, rate %.2e <= %.2g",
              worst_reflect, worst_rate, c.tol(1e-9)));

  const double k = 4.0 / 3.0;
  const BarrierSpec below = BarrierSpec::max_wall(std::nextafter(k, 0.0));
  const BarrierSpec above = BarrierSpec::max_wall(k);
  double worst_cont = 0.0;
  for (int j = 1; j < 200; ++j) {
    const double x = k * j / 200.0;
    worst_cont = std::max(worst_cont, std::abs(analytics::constrained_density(x, below) -
                                               analytics::constrained_density(x, above)));
  }
  const double rate_jump =
      std::abs(analytics::rate_function(below) - analytics::rate_function(above));
  c.check(classify(below) == Regime::MaxWallII && classify(above) == Regime::MaxWallIII &&
              worst_cont <= c.tol(1e-9) && rate_jump <= c.tol(1e-9),
          fmt("regions II and III at 4/3: density gap %.2e, rate gap %.2e <= %.2g", worst_cont,
              rate_jump, c.tol(1e-9)));
  c.m()["mass_error"] = worst_mass;
  c.m()["moment_error"] = worst_moment;
  c.m()["reflection_error"] = worst_reflect;
  c.m()["continuity_error"] = worst_cont;
}

struct Entry {
  const char* id;
  const char* title;
  void (*run)(const Context&);
};

const Entry kCriteria[] = {
    {"AC1", "MCMC density at MinWall 0.5, N = M = 100", ac1_density},
    {"AC2", "printed closed-form values", ac2_golden},
    {"AC3", "saddle point equation and energy", ac3_saddle},
    {"AC4", "small-N tail probabilities", ac4_tail},
    {"AC5", "entropy second derivative jump at 4/3", ac5_nonanalytic},
    {"AC6", "partial-transpose spectrum vs semicircle", ac6_pt_spectrum},
    {"AC7", "log negativity sweep vs model", ac7_negativity},
    {"AC8", "MCMC vs direct sampler, N = 3, 4, 5", ac8_cross_sampler},
    {"AC9", "analytic invariants over every regime", ac9_invariants},
};

}  // namespace

std::vector<std::string> criterion_ids() {
  std::vector<std::string> out;
  for (const Entry& e : kCriteria) out.push_back(e.id);
  return out;
}

std::string criterion_title(const std::string& id) {
  for (const Entry& e : kCriteria)
    if (id == e.id) return e.title;
  throw DomainError("unknown criterion '" + id + "'");
}

std::vector<CriterionResult> run_criteria(const VerifyOptions& opts) {
  for (const std::string& id : opts.only) criterion_title(id);
  std::vector<CriterionResult> out;
  for (const Entry& e : kCriteria) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), e.id) == opts.only.end())
      continue;
    CriterionResult r;
    r.id = e.id;
    r.title = e.title;
    r.passed = true;
    const auto start = Clock::now();
    try {
      e.run(Context{opts, r});
    } catch (const std::exception& ex) {
      r.passed = false;
      r.checks.push_back(std::string("FAIL  exception: ") + ex.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (opts.on_result) opts.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

Json report_json(const std::vector<CriterionResult>& results, const VerifyOptions& opts) {
  Json out;
  out["tolerance_scale"] = opts.tolerance_scale;
  out["passed"] = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  Json list = Json::array();
  for (const CriterionResult& r : results)
    list.push_back({{"id", r.id},
                    {"title", r.title},
                    {"passed", r.passed},
                    {"seconds", r.seconds},
                    {"checks", r.checks},
                    {"measurements", r.measurements}});
  out["criteria"] = list;
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::string out = fmt("%-4s %s  %s  (%.1f s)\n", r.id.c_str(), r.passed ? "PASS" : "FAIL",
                        r.title.c_str(), r.seconds);
  for (const std::string& line : r.checks) out += "       " + line + "\n";
  return out;
}

}  // namespace sldp::verify
