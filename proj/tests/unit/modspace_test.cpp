#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tfmod/error.hpp"
#include "tfmod/modspace.hpp"
#include "tfmod/oracle/oracles.hpp"

namespace tfmod {
namespace {

SignalNd delta(const GridSpec& g) { return standard_signal(g, SignalKind::delta); }

SignalNd block_window(const GridSpec& g, double radius) {
  SignalParams p;
  p.radius = std::vector<double>(g.dim(), radius);
  return normalized(standard_signal(g, SignalKind::block, p));
}

ModNormSpec mod_spec(std::vector<double> p, Permutation sigma, Weight w, SignalNd window) {
  return {MixedNormSpec(ExponentVector(std::move(p)), std::move(sigma), std::move(w)), std::move(window)};
}

TEST(ModulationNorm, ZeroAndMoyal) {
  const GridSpec g({16});
  const SignalNd phi = test::random_signal(g, 1), f = test::random_signal(g, 2);
  EXPECT_EQ(modulation_norm(SignalNd::zeros(g), mod_spec({1.0, 1.0}, {}, Weight::constant(2), phi)), 0.0);
  for (const Permutation& sigma : test::all_permutations(2)) {
    const double v = modulation_norm(f, mod_spec({2.0, 2.0}, sigma, Weight::constant(2), phi));
    EXPECT_LE(test::rel_err(v, f.norm2() * phi.norm2()), 1e-10);
  }
}

TEST(ModulationNorm, DeltaPair) {
  // V(x, xi) = delta(x) / 4: one time column of sixteen entries 1/4.
  const GridSpec g({16});
  const SignalNd d = delta(g);
  EXPECT_DOUBLE_EQ(modulation_norm(d, mod_spec({kInf, 1.0}, {}, Weight::constant(2), d)), 4.0);
  EXPECT_DOUBLE_EQ(modulation_norm(d, mod_spec({1.0, kInf}, {}, Weight::constant(2), d)), 0.25);
  EXPECT_DOUBLE_EQ(modulation_norm(d, mod_spec({1.0, kInf}, {1, 0}, Weight::constant(2), d)), 4.0);
}

TEST(ModulationNorm, MatchesOracleStft) {
  const GridSpec g({8, 4}, {0.5, 2.0});
  const SignalNd f = test::random_signal(g, 3), phi = test::unit_gaussian(g);
  const MixedNormSpec spec(ExponentVector({0.5, 2.0, kInf, 1.0}), {2, 0, 3, 1}, Weight::polynomial(4, 1.0));
  const double want = oracle::iterated_lebesgue_norm(oracle::naive_stft(f, phi).values(), spec);
  EXPECT_LE(test::rel_err(modulation_norm(f, {spec, phi}), want), 1e-12);
}

TEST(AmalgamNorm, EqualExponentsAndDeltaPair) {
  const GridSpec g({16});
  const SignalNd f = test::random_signal(g, 4), phi = test::unit_gaussian(g);
  EXPECT_LE(test::rel_err(amalgam_norm(f, 1.5, 1.5, Weight::constant(2), phi),
                          modulation_norm(f, mod_spec({1.5, 1.5}, {}, Weight::constant(2), phi))),
            1e-12);
  // Frequency first: the sup over xi is 1/4, a single time column follows.
  EXPECT_DOUBLE_EQ(amalgam_norm(delta(g), 1.0, kInf, Weight::constant(2), delta(g)), 0.25);
  EXPECT_DOUBLE_EQ(amalgam_norm(delta(g), kInf, 1.0, Weight::constant(2), delta(g)), 4.0);
}

TEST(AmalgamNorm, IsAPermutedMixedNorm) {
  const GridSpec g({8, 4});
  const SignalNd f = test::random_signal(g, 5), phi = test::unit_gaussian(g);
  const Weight w = Weight::polynomial(4, 1.0);
  const double a = amalgam_norm(f, 1.0, 2.0, w, phi);
  EXPECT_LE(test::rel_err(a, modulation_norm(f, {amalgam_as_mixed(2, 1.0, 2.0, w), phi})), 1e-12);
  // Frequency axes first with q, then time axes with p.
  const MixedNormSpec manual(ExponentVector({2.0, 2.0, 1.0, 1.0}), {2, 3, 0, 1}, w);
  EXPECT_LE(test::rel_err(a, oracle::iterated_lebesgue_norm(oracle::naive_stft(f, phi).values(), manual)), 1e-12);
}

TEST(FourierLebesgue, ParsevalAndDelta) {
  const GridSpec g({16});
  const SignalNd f = test::random_signal(g, 6);
  const std::vector<double> anchor{0.0};
  EXPECT_LE(test::rel_err(fourier_lebesgue_norm(f, 2.0, Weight::constant(2), anchor), f.norm2()), 1e-12);
  const Weight w = Weight::polynomial(2, 1.0);
  double sum = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double xi = static_cast<double>(symmetric_rep(k, 16));
    sum += std::sqrt(1.0 + xi * xi);
  }
  EXPECT_LE(test::rel_err(fourier_lebesgue_norm(delta(g), 1.0, w, anchor), sum / 4.0), 1e-12);
}

TEST(FourierLebesgue, AnchorMovesWithinModerationConstant) {
  const GridSpec g({16});
  const SignalNd f = test::random_signal(g, 7);
  const Weight w = Weight::polynomial(2, 1.0);
  const std::vector<double> x0{0.0}, x1{5.0};
  const double ratio = fourier_lebesgue_norm(f, 1.0, w, x1) / fourier_lebesgue_norm(f, 1.0, w, x0);
  // <(5, xi)> / <(0, xi)> <= <(5, 0)>
  EXPECT_LE(ratio, std::sqrt(26.0));
  EXPECT_GE(ratio, 1.0);
}

TEST(Reports, FinalizeConventions) {
  EquivalenceReport r;
  r.ratios = {0.0, 0.0};
  finalize(r);
  EXPECT_EQ(r.spread, 1.0);
  EXPECT_TRUE(r.passed);
  r.ratios = {1.0, kInf};
  finalize(r);
  EXPECT_FALSE(r.passed);
  r.ratios = {2.0, 0.5};
  r.bound = 3.0;
  finalize(r);
  EXPECT_DOUBLE_EQ(r.spread, 4.0);
  EXPECT_FALSE(r.passed);
}

TEST(WindowIndependence, TrivialWindows) {
  const GridSpec g({16});
  const SignalNd phi = test::unit_gaussian(g);
  const MixedNormSpec spec(ExponentVector({1.0, 2.0}), {}, Weight::polynomial(2, 1.0));
  const EquivalenceReport same = window_independence_report(1, 10, phi, phi, spec);
  for (double r : same.ratios) EXPECT_EQ(r, 1.0);
  const EquivalenceReport scaled = window_independence_report(1, 10, phi, phi.scaled(2.0), spec);
  for (double r : scaled.ratios) EXPECT_NEAR(r, 0.5, 1e-14);
  EXPECT_NEAR(scaled.spread, 1.0, 1e-13);
}

TEST(WindowIndependence, GaussianVersusBlock) {
  const GridSpec g({32});
  const MixedNormSpec spec(ExponentVector({1.0, 2.0}), {}, Weight::polynomial(2, 1.0));
  const EquivalenceReport r = window_independence_report(5, 50, test::unit_gaussian(g), block_window(g, 4), spec);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(std::isfinite(r.spread));
  EXPECT_LT(r.spread, 1.2);
}

TEST(Embedding, Laws) {
  const GridSpec g({16});
  const SignalNd phi = test::unit_gaussian(g);
  const ModNormSpec s11 = mod_spec({1.0, 1.0}, {}, Weight::constant(2), phi);
  const ModNormSpec s22 = mod_spec({2.0, 2.0}, {}, Weight::constant(2), phi);
  for (double r : embedding_report(2, 10, s11, s11).ratios) EXPECT_EQ(r, 1.0);
  const EquivalenceReport mono = embedding_report(2, 20, s11, s22);
  EXPECT_TRUE(mono.passed);
  EXPECT_LE(mono.ratio_max, 1.0 + 1e-10);
  const ModNormSpec w2 = mod_spec({1.0, 2.0}, {}, Weight::polynomial(2, 2.0), phi);
  const ModNormSpec w1 = mod_spec({2.0, kInf}, {}, Weight::polynomial(2, 1.0), phi);
  const EquivalenceReport weighted = embedding_report(3, 30, w2, w1);
  EXPECT_TRUE(weighted.passed);
  EXPECT_DOUBLE_EQ(weighted.constants.at("c"), 1.0);
}

TEST(Embedding, StepFactor) {
  // With steps (h, 1/h) = (0.5, 2): c = prod_k h_k^{1/p2_k - 1/p1_k} = 0.5^{-1/2} * 2^{-1/2} = 1.
  const GridSpec g({16}, {0.5});
  const SignalNd phi = test::unit_gaussian(g);
  const EquivalenceReport r = embedding_report(4, 10, mod_spec({1.0, 1.0}, {}, Weight::constant(2), phi),
                                               mod_spec({2.0, 2.0}, {}, Weight::constant(2), phi));
  EXPECT_NEAR(r.constants.at("c"), 1.0, 1e-15);
  EXPECT_TRUE(r.passed);
  const EquivalenceReport q = embedding_report(4, 10, mod_spec({1.0, 1.0}, {}, Weight::constant(2), phi),
                                               mod_spec({2.0, 1.0}, {}, Weight::constant(2), phi));
  EXPECT_NEAR(q.constants.at("c"), std::sqrt(2.0), 1e-14);
  EXPECT_TRUE(q.passed);
}

TEST(Embedding, RejectsViolatedHypotheses) {
  const GridSpec g({16});
  const SignalNd phi = test::unit_gaussian(g);
  EXPECT_THROW(embedding_report(1, 2, mod_spec({2.0, 2.0}, {}, Weight::constant(2), phi),
                                mod_spec({1.0, 2.0}, {}, Weight::constant(2), phi)),
               Error);
  EXPECT_THROW(embedding_report(1, 2, mod_spec({1.0, 1.0}, {}, Weight::constant(2), phi),
                                mod_spec({1.0, 1.0}, {}, Weight::constant(2), block_window(g, 2))),
               Error);
}

TEST(GaborEquivalence, FullLatticeIsExact) {
  const GridSpec g({16});
  const GaborSystem sys = with_canonical_dual(GaborSystem(test::unit_gaussian(g), LatticeSpec{{1}, {1}}));
  const MixedNormSpec spec(ExponentVector({1.0, 0.5}), {1, 0}, Weight::polynomial(2, 1.0));
  const auto [w, d] = gabor_equivalence_report(1, 20, sys, spec);
  EXPECT_NEAR(w.spread, 1.0, 1e-12);
  EXPECT_NEAR(d.spread, 1.0, 1e-12);
  EXPECT_NEAR(w.ratios[0], 1.0, 1e-12);
}

TEST(GaborEquivalence, TightFrameExponentTwo) {
  const GridSpec g({16, 16});
  const GaborSystem base(test::unit_gaussian(g), LatticeSpec{{2, 2}, {2, 2}});
  const GaborSystem tight = with_canonical_dual(GaborSystem(canonical_tight(base), base.lattice()));
  const MixedNormSpec spec(ExponentVector::uniform(4, 2.0));
  const auto [w, d] = gabor_equivalence_report(2, 10, tight, spec);
  EXPECT_LE(w.spread, 1.0 + 1e-9);
  EXPECT_LE(d.spread, 1.0 + 1e-9);
}

TEST(CoefficientNorm, MatchesSequenceNorm) {
  const GridSpec g({16});
  const GaborSystem sys(test::unit_gaussian(g), LatticeSpec{{2}, {4}});
  const GaborCoeffs c = analysis(test::random_signal(g, 3), sys);
  const MixedNormSpec spec(ExponentVector({1.0, 2.0}));
  const SequenceNd seq(c.shape(), {c.data().begin(), c.data().end()}, {}, SequenceNd::IndexMode::torus);
  EXPECT_LE(test::rel_err(coefficient_norm(c, spec), oracle::iterated_norm(seq, spec)), 1e-12);
}

TEST(WienerEquivalence, UnitBlocksAndDomination) {
  const GridSpec g({16});
  const SignalNd phi = test::unit_gaussian(g);
  const MixedNormSpec spec(ExponentVector({1.0, 2.0}), {}, Weight::polynomial(2, 1.0));
  const std::vector<std::size_t> unit{1, 1}, two{2, 2};
  const EquivalenceReport same = wiener_equivalence_report(1, 10, phi, phi, spec, unit);
  for (double r : same.ratios) EXPECT_NEAR(r, 1.0, 1e-12);
  const EquivalenceReport dom = wiener_equivalence_report(1, 10, phi, phi, spec, two);
  for (double r : dom.ratios) EXPECT_LE(r, 1.0 + 1e-12);
}

TEST(SupportAdaptedStep, Divisors) {
  EXPECT_EQ(support_adapted_step(GridSpec({64}), 4.0, 8.0), (std::vector<std::size_t>{16}));
  EXPECT_EQ(support_adapted_step(GridSpec({16, 32}), 1.0, 2.0), (std::vector<std::size_t>{4, 4}));
  EXPECT_THROW(support_adapted_step(GridSpec({16}), 4.0, 5.0), Error);
}

TEST(CompactSupport, SpreadIsOne) {
  const CompactSupportCase c{GridSpec({64}), 4.0, 8.0, 1.0, {0.5, 1.0, 2.0, kInf}, Weight::polynomial(2, 1.0)};
  const EquivalenceReport r = compact_support_report(3, 10, c);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.spread, 1.0, 1e-9);
}

TEST(LocalBound, CenteredVersusRandom) {
  const EquivalenceReport r = local_bound_report(3, 20, LocalBoundCase{GridSpec({32})});
  EXPECT_TRUE(r.passed);
  EXPECT_THROW(local_bound_report(3, 2, LocalBoundCase{GridSpec({8}), 0.5, 4.0}), Error);
}

TEST(DecayFit, GaussianIsQuadratic) {
  const DecayFit fit = gaussian_decay_fit(GridSpec({32}));
  EXPECT_TRUE(fit.passed);
  EXPECT_LT(fit.max_eigenvalue, 0.0);
  EXPECT_GE(fit.r_squared, 0.999);
}

TEST(RandomEnsemble, Deterministic) {
  const auto a = random_ensemble(GridSpec({8}), 9, 3), b = random_ensemble(GridSpec({8}), 9, 3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(distance(a[i], b[i]), 0.0);
  EXPECT_GT(distance(a[0], a[1]), 0.0);
}

}  // namespace
}  // namespace tfmod
