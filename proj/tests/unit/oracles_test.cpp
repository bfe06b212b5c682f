// Sanity checks of the reference implementations on hand-computable inputs.

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tfmod/oracle/oracles.hpp"

namespace tfmod {
namespace {

TEST(Oracle, NaiveDftOfDelta) {
  const SignalNd d = standard_signal(GridSpec({4, 2}), SignalKind::delta);
  const SignalNd fh = oracle::naive_dft(d);
  for (const cplx& z : fh.data()) EXPECT_NEAR(std::abs(z - cplx(1.0 / std::sqrt(8.0))), 0.0, 1e-15);
  const SignalNd back = oracle::naive_dft(fh, true);
  EXPECT_LE(distance(back, d), 1e-14);
}

TEST(Oracle, IteratedNormHandValues) {
  const SequenceNd a({2, 3}, {1.0, 0.0, 2.0, 1.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(oracle::iterated_norm(a, MixedNormSpec(ExponentVector({1.0, kInf}), {0, 1})), 2.0);
  EXPECT_DOUBLE_EQ(oracle::iterated_norm(a, MixedNormSpec(ExponentVector({1.0, kInf}), {1, 0})), 3.0);
  EXPECT_DOUBLE_EQ(oracle::iterated_norm(a, MixedNormSpec(ExponentVector({0.5, 0.5}))),
                   std::pow(3.0 + std::sqrt(2.0), 2));
}

TEST(Oracle, LebesgueNormUsesSteps) {
  const GridSpec g({2}, {0.25});
  EXPECT_DOUBLE_EQ(oracle::iterated_lebesgue_norm(SignalNd(g, {3.0, 4.0}), MixedNormSpec(ExponentVector({2.0}))),
                   2.5);
}

TEST(Oracle, NaiveStftDeltaPair) {
  const GridSpec g({4});
  const SignalNd d = standard_signal(g, SignalKind::delta);
  const PhaseSpaceSignal v = oracle::naive_stft(d, d);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t xi = 0; xi < 4; ++xi) EXPECT_NEAR(std::abs(v(x, xi) - cplx(x == 0 ? 0.5 : 0.0)), 0.0, 1e-15);
}

TEST(Oracle, DenseFrameOperatorFullLattice) {
  const GridSpec g({6});
  const SignalNd phi = test::random_signal(g, 1);
  const std::vector<cplx> s = oracle::dense_frame_operator(GaborSystem(phi, LatticeSpec{{1}, {1}}));
  const double diag = std::sqrt(6.0) * phi.norm2() * phi.norm2();
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) EXPECT_NEAR(std::abs(s[r * 6 + c] - cplx(r == c ? diag : 0.0)), 0.0, 1e-12);
  const FrameBounds fb = oracle::dense_frame_bounds(GaborSystem(phi, LatticeSpec{{1}, {1}}));
  EXPECT_NEAR(fb.lower, diag, 1e-12);
  EXPECT_NEAR(fb.upper, diag, 1e-12);
}

TEST(Oracle, SemidiscreteConvOfDelta) {
  const GridSpec g({8});
  const SignalNd f = test::random_signal(g, 2);
  const SequenceNd a({4}, {0.0, 1.0, 0.0, 0.0}, {}, SequenceNd::IndexMode::torus);
  const std::vector<std::size_t> theta{2};
  const std::vector<std::int64_t> shift{2};
  EXPECT_LE(distance(oracle::semidiscrete_conv(a, f, theta), translate(f, shift)), 1e-15);
}

TEST(Oracle, GridConvCellVolume) {
  const GridSpec g({4}, {0.5});
  const SignalNd one(g, std::vector<cplx>(4, 1.0));
  const SignalNd c = oracle::grid_conv(one, one);
  for (const cplx& z : c.data()) EXPECT_NEAR(std::abs(z - cplx(2.0)), 0.0, 1e-15);
}

}  // namespace
}  // namespace tfmod
