// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes within its time budget.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tfmod/convolution.hpp"
#include "tfmod/error.hpp"
#include "tfmod/gabor.hpp"
#include "tfmod/modspace.hpp"
#include "tfmod/oracle/oracles.hpp"

namespace tfmod {
namespace {

namespace fs = std::filesystem;
using test::rel_err;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Regression pins (criteria 7 and 9), recorded from the seeds below.
constexpr double kWindowSpreadPins[3] = {1.0478, 1.0427, 1.1857};
constexpr double kGaborGenericPins[2] = {1.0045, 1.0043};
constexpr double kPinTolerance = 0.10;

bool within_pin(double value, double pin) { return std::isfinite(value) && std::abs(value / pin - 1.0) <= kPinTolerance; }

// 1 -------------------------------------------------------------------------

Outcome mixed_norm_oracle() {
  detail::Rng rng(101);
  double worst = 0.0;
  std::size_t comparisons = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 1 + rng.below(3);
    std::vector<std::size_t> shape(d);
    for (auto& s : shape) s = 1 + rng.below(8);
    MultiIndex origin(d);
    for (auto& o : origin) o = static_cast<std::int64_t>(rng.below(9)) - 4;
    const auto mode = rng.below(2) ? SequenceNd::IndexMode::box : SequenceNd::IndexMode::torus;
    const SequenceNd a = test::random_sequence(shape, rng, mode, mode == SequenceNd::IndexMode::box ? origin : MultiIndex{});
    std::vector<double> p(d);
    for (auto& x : p) x = rng.pick<double>({0.5, 1.0, 2.0, kInf});
    const auto zoo = test::weight_zoo(d);
    const Weight& w = zoo[static_cast<std::size_t>(i) % zoo.size()];
    std::vector<double> step(d);
    for (auto& h : step) h = rng.pick<double>({0.5, 1.0, 2.0});
    for (const Permutation& sigma : test::all_permutations(d)) {
      const MixedNormSpec spec(ExponentVector(p), sigma, w);
      worst = std::max(worst, rel_err(iterated_seq_norm(a, spec), oracle::iterated_norm(a, spec)));
      ++comparisons;
      if (std::ranges::all_of(shape, [](std::size_t s) { return s >= 2; })) {
        // Same data on a grid with non-unit steps.
        const SignalNd f(GridSpec(shape, step), {a.data().begin(), a.data().end()});
        worst = std::max(worst, rel_err(iterated_lebesgue_norm(f, spec), oracle::iterated_lebesgue_norm(f, spec)));
        ++comparisons;
      }
    }
  }
  return {worst <= 1e-12, fmt("200 instances, %zu comparisons, max relative deviation %.3g", comparisons, worst)};
}

// 2 -------------------------------------------------------------------------

Outcome quasi_norm_laws() {
  detail::Rng rng(202);
  double tri = 0.0, mono = 0.0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t d = 1 + rng.below(3);
    std::vector<std::size_t> shape(d);
    for (auto& s : shape) s = 1 + rng.below(6);
    const SequenceNd a = test::random_sequence(shape, rng), b = test::random_sequence(shape, rng);
    std::vector<double> p(d), q(d);
    for (std::size_t k = 0; k < d; ++k) {
      p[k] = rng.pick<double>({0.5, 1.0, 2.0, kInf});
      q[k] = p[k] == kInf ? kInf : rng.pick<double>({p[k], 2.0 * p[k], kInf});
    }
    Permutation sigma = identity_permutation(d);
    std::shuffle(sigma.begin(), sigma.end(), std::mt19937_64(rng.below(1u << 30)));
    const auto zoo = test::weight_zoo(d);
    const Weight& w = zoo[rng.below(zoo.size())];
    const MixedNormSpec sp(ExponentVector(p), sigma, w), sq(ExponentVector(q), sigma, w);
    const double r = sp.p.r();
    const double lhs = std::pow(iterated_seq_norm(a + b, sp), r);
    const double rhs = std::pow(iterated_seq_norm(a, sp), r) + std::pow(iterated_seq_norm(b, sp), r);
    tri = std::max(tri, lhs / rhs - 1.0);
    mono = std::max(mono, iterated_seq_norm(a, sq) / iterated_seq_norm(a, sp) - 1.0);
  }
  return {tri <= 1e-10 && mono <= 1e-10,
          fmt("500 pairs, max triangle excess %.3g, max monotonicity excess %.3g", tri, mono)};
}

// 3 -------------------------------------------------------------------------

Outcome gabor_reconstruction() {
  const std::vector<std::pair<std::size_t, std::size_t>> lattices{{1, 1}, {2, 2}, {2, 4}, {4, 4}};
  double dual_res = 0.0, rec_res = 0.0, expansion_gap = 0.0;
  std::size_t configs = 0;
  for (std::size_t n : {16u, 32u, 64u}) {
    const GridSpec g({n});
    for (const auto& [a, b] : lattices) {
      const LatticeSpec lat{{a}, {b}};
      if (lat.redundancy(g) < 1.0) continue;
      ++configs;
      // Centered half a sample off the grid: the grid-centered Gaussian has a
      // Zak zero at critical density and is not a frame there.
      const GaborSystem base(test::periodic_gaussian(g, 0.5), lat);
      const DualResult dual = canonical_dual(base, 1e-12);
      dual_res = std::max(dual_res, dual.residual);
      const GaborSystem sys = base.with_dual(dual.dual);
      for (const SignalNd& f : random_ensemble(g, 300 + n + 10 * a + b, 20)) {
        const Reconstruction r = reconstruct(f, sys);
        rec_res = std::max(rec_res, r.residual);
        expansion_gap = std::max(expansion_gap, distance(r.from_window_coeffs, r.from_dual_coeffs) / f.norm2());
      }
    }
  }
  const GaborSystem centered(test::unit_gaussian(GridSpec({16})), LatticeSpec{{4}, {4}});
  const double centered_lower = frame_bounds(centered).lower;
  return {configs == 12 && dual_res <= 1e-12 && rec_res <= 1e-9 && expansion_gap <= 1e-9,
          fmt("%zu configurations, CG residual %.3g, reconstruction residual %.3g, expansion gap %.3g "
              "(grid-centered Gaussian at N=16, a=b=4: lower frame bound %.2g)",
              configs, dual_res, rec_res, expansion_gap, centered_lower)};
}

// 4 -------------------------------------------------------------------------

Outcome frame_operator_structure() {
  struct Config {
    GridSpec grid;
    LatticeSpec lattice;
  };
  const std::vector<Config> configs{{GridSpec({32}), {{2}, {4}}},
                                    {GridSpec({16}), {{4}, {4}}},
                                    {GridSpec({64}), {{4}, {2}}},
                                    {GridSpec({8, 8}), {{2, 2}, {2, 4}}}};
  detail::Rng rng(404);
  double adj = 0.0, psd = 0.0, cov = 0.0, dense_gap = 0.0;
  std::size_t probes = 0, detected = 0;
  for (const Config& c : configs) {
    // Generic window: a Gaussian frame operator is nearly a multiple of the
    // identity, which would blunt the off-lattice control.
    const GaborSystem sys(test::random_signal(c.grid, rng.below(1u << 30)), c.lattice);
    const std::size_t d = c.grid.dim();
    if (c.grid.size() <= 64) {
      const std::vector<cplx> dense = oracle::dense_frame_operator(sys);
      const SignalNd f = test::random_signal(c.grid, rng.below(1u << 30));
      const SignalNd sf = frame_operator_apply(f, sys);
      const std::size_t m = c.grid.size();
      for (std::size_t r = 0; r < m; ++r) {
        cplx want = 0.0;
        for (std::size_t k = 0; k < m; ++k) want += dense[r * m + k] * f[k];
        dense_gap = std::max(dense_gap, std::abs(sf[r] - want) / f.norm2());
      }
    }
    for (int t = 0; t < 25; ++t) {
      const SignalNd f = test::random_signal(c.grid, rng.below(1u << 30));
      const SignalNd h = test::random_signal(c.grid, rng.below(1u << 30));
      const SignalNd sf = frame_operator_apply(f, sys), sh = frame_operator_apply(h, sys);
      const double scale = f.norm2() * h.norm2();
      adj = std::max(adj, std::abs(inner(sf, h) - inner(f, sh)) / scale);
      const cplx q = inner(sf, f);
      psd = std::max({psd, -q.real() / (f.norm2() * f.norm2()), std::abs(q.imag()) / (f.norm2() * f.norm2())});

      std::vector<std::int64_t> j(d), k(d), joff(d), koff(d);
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t a = c.lattice.a[i], b = c.lattice.b[i], n = c.grid.n(i);
        j[i] = static_cast<std::int64_t>(a * rng.below(n / a));
        k[i] = static_cast<std::int64_t>(b * rng.below(n / b));
        joff[i] = j[i];
        koff[i] = k[i];
      }
      cov = std::max(cov, frame_op_covariance_residual(sys, f, j, k));
      // Off-lattice probe: perturb one coordinate by less than its lattice step.
      const std::size_t axis = rng.below(2 * d);
      if (axis < d) {
        joff[axis] += static_cast<std::int64_t>(1 + rng.below(c.lattice.a[axis] - 1));
      } else {
        koff[axis - d] += static_cast<std::int64_t>(1 + rng.below(c.lattice.b[axis - d] - 1));
      }
      ++probes;
      if (detail::covariance_residual_unchecked(sys, f, joff, koff) > 1e-6) ++detected;
    }
  }
  const double rate = static_cast<double>(detected) / static_cast<double>(probes);
  return {adj <= 1e-10 && psd <= 1e-10 && cov <= 1e-10 && dense_gap <= 1e-10 && rate >= 0.9,
          fmt("self-adjointness %.3g, PSD %.3g, covariance %.3g, dense-oracle gap %.3g, off-lattice detected %zu/%zu",
              adj, psd, cov, dense_gap, detected, probes)};
}

// 5 -------------------------------------------------------------------------

Outcome moyal() {
  const std::vector<GridSpec> grids{GridSpec({16}), GridSpec({32}), GridSpec({64}), GridSpec({128}),
                                    GridSpec({8, 8}), GridSpec({16, 8})};
  double worst = 0.0, oracle_gap = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const GridSpec& g = grids[i % grids.size()];
    const SignalNd f = test::random_signal(g, detail::mix_seed(505, 2 * i));
    const SignalNd phi = test::random_signal(g, detail::mix_seed(505, 2 * i + 1));
    const PhaseSpaceSignal v = stft(f, phi);
    worst = std::max(worst, rel_err(v.values().norm2(), f.norm2() * phi.norm2()));
    if (g.size() <= 16) {
      const PhaseSpaceSignal w = oracle::naive_stft(f, phi);
      double gap = 0.0;
      for (std::size_t m = 0; m < v.data().size(); ++m) gap = std::max(gap, std::abs(v.data()[m] - w.data()[m]));
      oracle_gap = std::max(oracle_gap, gap / (f.norm2() * phi.norm2()));
    }
  }
  return {worst <= 1e-10 && oracle_gap <= 1e-12,
          fmt("100 pairs, max relative deviation %.3g, STFT vs direct sum %.3g", worst, oracle_gap)};
}

// 6 -------------------------------------------------------------------------

Outcome convolution_sweeps() {
  const SweepSummary s = semidiscrete_sweep(606, 500);
  const SweepSummary d = dilation_sweep(607, 100);
  const SweepSummary w = wiener_conv_sweep(608, 200);

  // Exact Young cases: unit weights, l^1 / L^1 exponents, non-negative data.
  detail::Rng rng(609);
  double young_max = 0.0;
  bool young_ok = true;
  for (int i = 0; i < 20; ++i) {
    const bool two = i % 2;
    const GridSpec g = two ? GridSpec({8, 8}) : GridSpec({32});
    const std::size_t dim = g.dim();
    std::vector<cplx> fv(g.size()), f2v(g.size());
    for (auto& z : fv) z = rng.uniform();
    for (auto& z : f2v) z = rng.uniform();
    const SignalNd f(g, fv), f2(g, f2v);

    const std::vector<std::size_t> theta(dim, 2);
    std::vector<std::size_t> ashape(dim);
    for (std::size_t k = 0; k < dim; ++k) ashape[k] = g.n(k) / 2;
    const SemidiscreteCase sc{g, theta, ExponentVector::uniform(dim, 1.0), identity_permutation(dim),
                              Weight::constant(dim), Weight::constant(dim)};
    const ConvEstimateReport r1 = check_semidiscrete_estimate(sc, test::nonneg_sequence(ashape, rng), f);

    const WienerConvCase wc{g,
                            std::vector<std::size_t>(dim, 2),
                            {1.0, 1.0, 1.0},
                            {ExponentVector::uniform(dim, 1.0), ExponentVector::uniform(dim, 1.0),
                             ExponentVector::uniform(dim, 1.0)},
                            identity_permutation(dim),
                            {Weight::constant(dim), Weight::constant(dim), Weight::constant(dim)},
                            {}};
    const ConvEstimateReport r2 = check_wiener_conv_estimate(wc, f, f2);
    for (const ConvEstimateReport* r : {&r1, &r2}) {
      young_ok = young_ok && r->passed;
      young_max = std::max(young_max, r->ratio);
    }
  }
  young_ok = young_ok && young_max <= 1.0 + 1e-10;
  const bool ok = s.passed && d.passed && w.passed && s.instances == 500 && d.instances == 100 && w.instances == 200;
  return {ok && young_ok,
          fmt("semidiscrete %zu/%zu, dilation %zu/%zu, wiener %zu/%zu passed; exact Young max ratio %.12g",
              s.instances - s.failures, s.instances, d.instances - d.failures, d.instances,
              w.instances - w.failures, w.instances, young_max)};
}

// 7 -------------------------------------------------------------------------

SignalNd block_window(const GridSpec& g, double radius) {
  SignalParams p;
  p.radius = std::vector<double>(g.dim(), radius);
  return normalized(standard_signal(g, SignalKind::block, p));
}

Outcome window_independence() {
  struct Config {
    GridSpec grid;
    double radius;
    MixedNormSpec spec;
  };
  const std::vector<Config> configs{
      {GridSpec({32}), 4.0, MixedNormSpec(ExponentVector({1.0, 2.0}), {}, Weight::polynomial(2, 1.0))},
      {GridSpec({32}), 4.0, MixedNormSpec(ExponentVector({2.0, 0.5}), {1, 0}, Weight::exponential(2, 0.1))},
      {GridSpec({8, 8}), 2.0,
       MixedNormSpec(ExponentVector({1.0, kInf, 2.0, 1.0}), {2, 0, 3, 1}, Weight::polynomial(4, 1.0))}};
  std::string detail;
  bool ok = true;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const Config& c = configs[i];
    const EquivalenceReport r =
        window_independence_report(700 + i, 50, test::unit_gaussian(c.grid), block_window(c.grid, c.radius), c.spec);
    ok = ok && r.passed && within_pin(r.spread, kWindowSpreadPins[i]);
    detail += fmt("%sspread %.6f (pin %.4f)", i ? ", " : "", r.spread, kWindowSpreadPins[i]);
  }
  return {ok, detail};
}

// 8 -------------------------------------------------------------------------

Outcome embedding() {
  struct Config {
    GridSpec grid;
    MixedNormSpec s1, s2;
  };
  const std::vector<Config> configs{
      {GridSpec({32}), MixedNormSpec(ExponentVector({1.0, 2.0}), {}, Weight::polynomial(2, 2.0)),
       MixedNormSpec(ExponentVector({2.0, kInf}), {}, Weight::polynomial(2, 1.0))},
      {GridSpec({32}, {0.5}), MixedNormSpec(ExponentVector({0.5, 1.0}), {1, 0}, Weight::polynomial(2, 1.0)),
       MixedNormSpec(ExponentVector({1.0, 1.0}), {1, 0}, Weight::constant(2, 3.0))},
      {GridSpec({8, 8}, {0.5, 2.0}),
       MixedNormSpec(ExponentVector({1.0, 1.0, 0.5, 2.0}), {3, 1, 0, 2}, Weight::exponential(4, 0.2)),
       MixedNormSpec(ExponentVector({2.0, 1.0, 1.0, kInf}), {3, 1, 0, 2}, Weight::polynomial(4, 2.0))}};
  std::string detail;
  bool ok = true;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const Config& c = configs[i];
    const SignalNd phi = test::unit_gaussian(c.grid);
    const EquivalenceReport r = embedding_report(800 + i, 100, {c.s1, phi}, {c.s2, phi}, 1e-10);
    const double cst = r.constants.at("c");
    ok = ok && r.passed && r.ratio_max <= cst * (1.0 + 1e-10) && r.ratios.size() == 100;
    detail += fmt("%smax ratio / c = %.6f", i ? ", " : "", r.ratio_max / cst);
  }
  return {ok, detail};
}

// 9 -------------------------------------------------------------------------

Outcome gabor_equivalence() {
  const GridSpec g1({16});
  const GaborSystem full = with_canonical_dual(GaborSystem(test::unit_gaussian(g1), LatticeSpec{{1}, {1}}));
  const auto [fw, fd] =
      gabor_equivalence_report(901, 50, full, MixedNormSpec(ExponentVector({1.0, 2.0}), {}, Weight::polynomial(2, 1.0)));
  const double full_dev = std::max(std::abs(fw.spread - 1.0), std::abs(fd.spread - 1.0));

  const GridSpec g2({16, 16});
  const GaborSystem base(test::unit_gaussian(g2), LatticeSpec{{2, 2}, {2, 2}});
  const GaborSystem tight = with_canonical_dual(GaborSystem(canonical_tight(base), base.lattice()));
  const auto [tw, td] = gabor_equivalence_report(902, 50, tight, MixedNormSpec(ExponentVector::uniform(4, 2.0)));
  const double tight_spread = std::max(tw.spread, td.spread);

  const GaborSystem generic = with_canonical_dual(base);
  const auto [gw, gd] = gabor_equivalence_report(
      903, 50, generic, MixedNormSpec(ExponentVector({1.0, 1.0, 2.0, 2.0}), {}, Weight::polynomial(4, 1.0)));
  const bool ok = full_dev <= 1e-12 && tight_spread <= 1.0 + 1e-9 && within_pin(gw.spread, kGaborGenericPins[0]) &&
                  within_pin(gd.spread, kGaborGenericPins[1]);
  return {ok, fmt("full lattice |spread - 1| %.3g, tight p=2 spread - 1 = %.3g, generic spreads %.6f / %.6f "
                  "(pins %.4f / %.4f)",
                  full_dev, tight_spread - 1.0, gw.spread, gd.spread, kGaborGenericPins[0], kGaborGenericPins[1])};
}

// 10 ------------------------------------------------------------------------

Outcome compact_support() {
  struct Config {
    GridSpec grid;
    double support, window, q;
    Weight omega;
  };
  const std::vector<Config> configs{{GridSpec({64}), 8.0, 8.0, 1.0, Weight::constant(2)},
                                    {GridSpec({64}), 4.0, 8.0, 2.0, Weight::polynomial(2, 1.0)},
                                    {GridSpec({16, 16}), 1.0, 2.0, 1.0, Weight::polynomial(4, 1.0)}};
  std::string detail;
  bool ok = true;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const Config& c = configs[i];
    CompactSupportCase small{c.grid, c.support, c.window, c.q, {c.q}, c.omega};
    CompactSupportCase large = small;
    large.p_list = {0.5, 1.0, 2.0, kInf};
    const EquivalenceReport rs = compact_support_report(1000 + i, 30, small);
    const EquivalenceReport rl = compact_support_report(1000 + i, 30, large);
    ok = ok && rs.passed && rl.passed && std::isfinite(rl.spread) && rl.spread <= rs.spread + 1e-9;
    detail += fmt("%snorm ratio %.4f, spread %.12g -> %.12g", i ? ", " : "", rl.ratio_max, rs.spread, rl.spread);
  }
  return {ok, detail};
}

// 11 ------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_tool(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + TFMOD_BINARY + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

constexpr const char* kSuiteConfig = R"({"experiments": [
  {"name": "delta-norm", "kind": "norm", "grid": {"n": [16]}, "norm": "modulation",
   "signal": "delta", "window": "delta", "spec": {"p": ["inf", 1]}, "format": "both", "plot": true},
  {"name": "dual", "kind": "gabor-dual", "grid": {"n": [32]}, "seed": 11, "window": "gaussian",
   "lattice": {"a": 2, "b": 4}, "n_signals": 5, "format": "both", "plot": true},
  {"name": "sweep", "kind": "conv-sweep", "grid": {"n": [16]}, "seed": 12, "format": "both",
   "sweeps": [{"estimate": "semidiscrete", "count": 20}, {"estimate": "wiener", "count": 10}],
   "cases": [{"estimate": "semidiscrete", "theta": 2, "p": [1], "a": "delta", "f": "gaussian"}]},
  {"name": "suite", "kind": "verify-suite", "grid": {"n": [16]}, "seed": 13, "format": "both",
   "checks": [{"type": "embedding", "n_signals": 10, "window": "gaussian",
               "spec": {"p": [1, 2]}, "spec2": {"p": [1, 2]}},
              {"type": "window-independence", "n_signals": 10, "window": "gaussian",
               "window2": {"kind": "block", "radius": 3}, "spec": {"p": [1, 2]}},
              {"type": "decay-fit"}]}
]})";

constexpr const char* kFailingConfig = R"({"kind": "report", "grid": {"n": [16]}, "seed": 1, "report":
  {"type": "window-independence", "n_signals": 5, "window": "gaussian",
   "window2": {"kind": "block", "radius": 2}, "spec": {"p": [1, 1]}, "bound": 1.0000001}})";

Outcome cli_contract() {
  const fs::path dir = fs::temp_directory_path() / ("tfmod-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name, std::ios::binary) << text;
    return (dir / name).string();
  };
  const std::string ok = write("ok.json", kSuiteConfig);
  const std::string failing = write("fail.json", kFailingConfig);
  const std::string malformed = write("malformed.json", "{\"kind\": \"norm\",\n \"grid\": {\"n\": [16]},,}");
  const std::string unknown = write("unknown.json", R"({"kind": "spectrogram", "grid": {"n": [16]}})");

  const int run1 = run_tool("run " + ok + " --out " + (dir / "a").string());
  const int run2 = run_tool("run " + ok + " --jobs 3 --out " + (dir / "b").string());
  std::size_t compared = 0, identical = 0;
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    const std::string name = entry.path().filename().string();
    if (name == "manifest.json") continue;
    ++compared;
    if (slurp(entry.path()) == slurp(dir / "b" / name)) ++identical;
  }
  const int seeded1 = run_tool("run " + ok + " --out " + (dir / "c").string(), "TFMOD_SEED=77");
  const int seeded2 = run_tool("run " + ok + " --out " + (dir / "d").string(), "TFMOD_SEED=77");
  const bool seeded_same = slurp(dir / "c" / "dual.json") == slurp(dir / "d" / "dual.json") &&
                           slurp(dir / "c" / "dual.json") != slurp(dir / "a" / "dual.json");
  const int fail = run_tool("run " + failing + " --out " + (dir / "e").string());
  const int bad_json = run_tool("run " + malformed + " --out " + (dir / "f").string());
  const int bad_kind = run_tool("run " + unknown + " --out " + (dir / "f").string());
  const int bad_seed = run_tool("run " + ok + " --out " + (dir / "f").string(), "TFMOD_SEED=abc");
  fs::remove_all(dir);

  // 4 experiments: json + csv each, plus the two heatmaps.
  const bool ok_all = run1 == 0 && run2 == 0 && compared == 10 && identical == compared && seeded1 == 0 &&
                      seeded2 == 0 && seeded_same && fail == 1 && bad_json == 2 && bad_kind == 2 && bad_seed == 2;
  return {ok_all, fmt("byte-identical outputs %zu/%zu, seed override deterministic %s; exit codes pass=%d,%d "
                      "failed-report=%d malformed=%d unknown-kind=%d bad-seed=%d",
                      identical, compared, seeded_same ? "yes" : "no", run1, run2, fail, bad_json, bad_kind, bad_seed)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> fn;
};

}  // namespace
}  // namespace tfmod

int main() {
  using namespace tfmod;
  const std::vector<Criterion> criteria{
      {1, "mixed-norm oracle equivalence", 10, mixed_norm_oracle},
      {2, "quasi-norm laws", 10, quasi_norm_laws},
      {3, "Gabor reconstruction", 60, gabor_reconstruction},
      {4, "frame-operator structure", 30, frame_operator_structure},
      {5, "Moyal identity", 10, moyal},
      {6, "convolution estimate sweeps", 60, convolution_sweeps},
      {7, "window independence", 30, window_independence},
      {8, "embedding", 30, embedding},
      {9, "Gabor norm equivalence", 30, gabor_equivalence},
      {10, "compact-support p-independence", 30, compact_support},
      {11, "CLI determinism and exit codes", 10, cli_contract},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool passed = out.passed && in_time;
    if (!passed) ++failures;
    std::printf("%s %2d %s: %s [%.2f s / %.0f s%s]\n", passed ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs,
                c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
