#include "cli/builtin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cli/runner.hpp"
#include "tfmod/convolution.hpp"
#include "tfmod/detail/rng.hpp"
#include "tfmod/gabor.hpp"
#include "tfmod/modspace.hpp"
#include "tfmod/oracle/oracles.hpp"

namespace tfmod::cli {

namespace {

struct Line {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

SignalNd gaussian(const GridSpec& g) {
  SignalParams p;
  p.normalize = true;
  return standard_signal(g, SignalKind::gaussian, p);
}

Line oracle_agreement() {
  detail::Rng rng(11);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const std::size_t d = 1 + rng.below(3);
    std::vector<std::size_t> shape(d);
    std::size_t total = 1;
    for (auto& s : shape) total *= (s = 1 + rng.below(5));
    std::vector<cplx> data(total);
    for (auto& z : data) z = {rng.normal(), rng.normal()};
    std::vector<double> p(d);
    for (auto& x : p) x = rng.pick<double>({0.5, 1.0, 2.0, kInf});
    Permutation sigma = identity_permutation(d);
    std::shuffle(sigma.begin(), sigma.end(), std::mt19937_64(rng.below(1u << 30)));
    const MixedNormSpec spec(ExponentVector(p), sigma, Weight::polynomial(d, 1.0));
    const SequenceNd a(shape, data, {}, SequenceNd::IndexMode::torus);
    const double fast = iterated_seq_norm(a, spec);
    const double slow = oracle::iterated_norm(a, spec);
    worst = std::max(worst, std::abs(fast - slow) / std::max(slow, 1e-300));
  }
  return {worst <= 1e-12, fmt("max relative deviation %.3g over 60 instances", worst)};
}

Line moyal() {
  const GridSpec g({32});
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    SignalParams fp;
    fp.seed = s;
    const SignalNd f = standard_signal(g, SignalKind::random, fp);
    fp.seed = s + 1000;
    const SignalNd phi = standard_signal(g, SignalKind::random, fp);
    const double lhs = stft(f, phi).values().norm2();
    worst = std::max(worst, std::abs(lhs / (f.norm2() * phi.norm2()) - 1.0));
  }
  return {worst <= 1e-10, fmt("max relative deviation %.3g", worst)};
}

Line reconstruction() {
  const GridSpec g({16});
  const GaborSystem sys = with_canonical_dual(GaborSystem(gaussian(g), LatticeSpec{{2}, {2}}));
  double worst = 0.0;
  for (const SignalNd& f : random_ensemble(g, 5, 10)) worst = std::max(worst, reconstruct(f, sys).residual);
  const FrameBounds dense = oracle::dense_frame_bounds(sys);
  const FrameBounds fast = frame_bounds(sys);
  const double fb = std::max(std::abs(dense.lower - fast.lower), std::abs(dense.upper - fast.upper));
  return {worst <= 1e-9 && fb <= 1e-9, fmt("reconstruction residual %.3g, frame bound deviation %.3g", worst, fb)};
}

Line sweeps() {
  const SweepSummary s = semidiscrete_sweep(1, 100);
  const SweepSummary d = dilation_sweep(2, 50);
  const SweepSummary w = wiener_conv_sweep(3, 50);
  const std::size_t failures = s.failures + d.failures + w.failures;
  return {s.passed && d.passed && w.passed, fmt("%.0f instances, %.0f failures", 200.0, static_cast<double>(failures))};
}

Line window_independence() {
  const GridSpec g({32});
  SignalParams bp;
  bp.radius = {4};
  const SignalNd block = normalized(standard_signal(g, SignalKind::block, bp));
  const MixedNormSpec spec(ExponentVector({1.0, 2.0}), {}, Weight::polynomial(2, 1.0));
  const EquivalenceReport r = window_independence_report(7, 20, gaussian(g), block, spec);
  return {r.passed, fmt("spread %.6g (bound %.0f)", r.spread, r.bound)};
}

Line embedding() {
  const GridSpec g({32});
  const SignalNd phi = gaussian(g);
  const ModNormSpec s1{MixedNormSpec(ExponentVector({1.0, 2.0}), {}, Weight::polynomial(2, 2.0)), phi};
  const ModNormSpec s2{MixedNormSpec(ExponentVector({2.0, kInf}), {}, Weight::polynomial(2, 1.0)), phi};
  const EquivalenceReport r = embedding_report(7, 20, s1, s2);
  return {r.passed, fmt("max ratio %.6g, c = %.6g", r.ratio_max, r.constants.at("c"))};
}

Line gabor_equivalence() {
  const GridSpec g({16});
  const GaborSystem sys = with_canonical_dual(GaborSystem(gaussian(g), LatticeSpec{{1}, {1}}));
  const MixedNormSpec spec(ExponentVector({1.0, 2.0}), {}, Weight::polynomial(2, 1.0));
  const auto [w, d] = gabor_equivalence_report(7, 20, sys, spec);
  const double dev = std::abs(w.spread - 1.0);
  return {dev <= 1e-12 && w.passed && d.passed, fmt("full-lattice spread - 1 = %.3g", dev)};
}

Line compact_support() {
  const CompactSupportCase c{GridSpec({64}), 4.0, 8.0, 1.0, {0.5, 1.0, 2.0, kInf}, Weight::polynomial(2, 1.0)};
  const EquivalenceReport r = compact_support_report(7, 10, c);
  return {r.passed, fmt("spread %.12g", r.spread)};
}

Line local_bound() {
  const EquivalenceReport r = local_bound_report(7, 10, LocalBoundCase{GridSpec({32})});
  return {r.passed, fmt("off-center max %.6g, center max %.6g", r.constants.at("off_center_max"),
                        r.constants.at("center_max"))};
}

Line decay_fit() {
  const DecayFit fit = gaussian_decay_fit(GridSpec({32}));
  return {fit.passed, fmt("R^2 %.6f, largest eigenvalue %.4g", fit.r_squared, fit.max_eigenvalue)};
}

}  // namespace

int run_builtin_suite(std::ostream& out) {
  const std::vector<std::pair<const char*, std::function<Line()>>> checks{
      {"mixed-norm-oracle", oracle_agreement}, {"moyal", moyal},
      {"gabor-reconstruction", reconstruction}, {"convolution-sweeps", sweeps},
      {"window-independence", window_independence}, {"embedding", embedding},
      {"gabor-equivalence", gabor_equivalence}, {"compact-support", compact_support},
      {"local-bound", local_bound}, {"decay-fit", decay_fit}};
  int code = kExitPass;
  for (const auto& [name, fn] : checks) {
    Line line{false, ""};
    try {
      line = fn();
    } catch (const std::exception& e) {
      line = {false, std::string("exception: ") + e.what()};
    }
    out << (line.passed ? "PASS " : "FAIL ") << name << ": " << line.detail << '\n';
    if (!line.passed) code = kExitFail;
  }
  return code;
}

}  // namespace tfmod::cli
