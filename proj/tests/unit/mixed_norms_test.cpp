#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tfmod/error.hpp"
#include "tfmod/mixed_norms.hpp"
#include "tfmod/oracle/oracles.hpp"

namespace tfmod {
namespace {

SequenceNd ones(std::vector<std::size_t> shape) {
  std::size_t total = 1;
  for (std::size_t s : shape) total *= s;
  return SequenceNd(std::move(shape), std::vector<cplx>(total, 1.0));
}

TEST(ExponentVector, Validation) {
  EXPECT_THROW(ExponentVector({}), Error);
  EXPECT_THROW(ExponentVector({1.0, 0.0}), Error);
  EXPECT_THROW(ExponentVector({-1.0}), Error);
  const ExponentVector p({0.5, kInf, 2.0});
  EXPECT_EQ(p.min(), 0.5);
  EXPECT_EQ(p.max(), kInf);
  EXPECT_EQ(p.r(), 0.5);
  EXPECT_EQ(ExponentVector({2.0, 3.0}).r(), 1.0);
}

TEST(Permutation, Validation) {
  EXPECT_NO_THROW(validate_permutation(Permutation{2, 0, 1}, 3));
  EXPECT_THROW(validate_permutation(Permutation{0, 0, 1}, 3), Error);
  EXPECT_THROW(validate_permutation(Permutation{0, 1}, 3), Error);
  EXPECT_EQ(inverse_permutation(Permutation{2, 0, 1}), (Permutation{1, 2, 0}));
}

TEST(IteratedSeqNorm, HandValues) {
  EXPECT_DOUBLE_EQ(iterated_seq_norm(ones({3, 3}), MixedNormSpec(ExponentVector({1.0, 1.0}))), 9.0);
  const double two_root_two = 2.0 * std::sqrt(2.0);
  EXPECT_NEAR(iterated_seq_norm(ones({2, 2}), MixedNormSpec(ExponentVector({1.0, 2.0}))), two_root_two, 1e-15);
  EXPECT_NEAR(iterated_seq_norm(ones({2, 2}), MixedNormSpec(ExponentVector({1.0, 2.0}), {1, 0})), two_root_two,
              1e-15);
}

TEST(IteratedSeqNorm, OrderMatters) {
  const SequenceNd a({2, 3}, {1.0, 0.0, 2.0, 1.0, 1.0, 0.0});
  const ExponentVector p({1.0, kInf});
  // axis 0 first (l^1): column sums (2, 1, 2) -> sup 2.
  EXPECT_DOUBLE_EQ(iterated_seq_norm(a, MixedNormSpec(p, {0, 1})), 2.0);
  // axis 1 first (l^1): row sums (3, 2) -> sup 3.
  EXPECT_DOUBLE_EQ(iterated_seq_norm(a, MixedNormSpec(p, {1, 0})), 3.0);
}

TEST(IteratedSeqNorm, SupAndFrobenius) {
  detail::Rng rng(2);
  const SequenceNd a = test::random_sequence({4, 5}, rng);
  double mx = 0.0, fro = 0.0;
  for (const cplx& z : a.data()) {
    mx = std::max(mx, std::abs(z));
    fro += std::norm(z);
  }
  EXPECT_DOUBLE_EQ(iterated_seq_norm(a, MixedNormSpec(ExponentVector({kInf, kInf}))), mx);
  EXPECT_NEAR(iterated_seq_norm(a, MixedNormSpec(ExponentVector({2.0, 2.0}))), std::sqrt(fro), 1e-13 * std::sqrt(fro));
}

TEST(IteratedSeqNorm, Singleton) {
  const Weight w = Weight::polynomial(2, 2.0);
  const SequenceNd a({1, 1}, {cplx(3.0, 4.0)}, {1, 2});
  for (double p : {0.5, 1.0, kInf}) {
    const MixedNormSpec spec(ExponentVector::uniform(2, p), {1, 0}, w);
    EXPECT_DOUBLE_EQ(iterated_seq_norm(a, spec), 5.0 * 6.0);
  }
}

TEST(IteratedSeqNorm, AgreesWithOracle) {
  detail::Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const std::size_t d = 1 + rng.below(3);
    std::vector<std::size_t> shape(d);
    for (auto& s : shape) s = 1 + rng.below(6);
    MultiIndex origin(d);
    for (auto& o : origin) o = static_cast<std::int64_t>(rng.below(7)) - 3;
    const SequenceNd a = test::random_sequence(shape, rng, SequenceNd::IndexMode::box, origin);
    std::vector<double> p(d);
    for (auto& x : p) x = rng.pick<double>({0.5, 1.0, 2.0, 3.0, kInf});
    const auto zoo = test::weight_zoo(d);
    for (const Permutation& sigma : test::all_permutations(d)) {
      const MixedNormSpec spec(ExponentVector(p), sigma, zoo[rng.below(zoo.size())]);
      EXPECT_LE(test::rel_err(iterated_seq_norm(a, spec), oracle::iterated_norm(a, spec)), 1e-12);
    }
  }
}

TEST(IteratedSeqNorm, ZeroAndHomogeneity) {
  detail::Rng rng(4);
  const SequenceNd a = test::random_sequence({3, 4}, rng);
  const MixedNormSpec spec(ExponentVector({0.5, 2.0}), {1, 0}, Weight::polynomial(2, 1.0));
  EXPECT_EQ(iterated_seq_norm(a.scaled(0.0), spec), 0.0);
  EXPECT_NEAR(iterated_seq_norm(a.scaled(cplx(0.0, -3.0)), spec), 3.0 * iterated_seq_norm(a, spec),
              1e-13 * iterated_seq_norm(a, spec));
}

TEST(IteratedLebesgueNorm, CellIndicator) {
  const GridSpec g({4, 8}, {0.5, 0.25});
  std::vector<cplx> v(g.size());
  v[g.flat(std::vector<std::int64_t>{1, 3})] = 1.0;
  const SignalNd f(g, v);
  EXPECT_DOUBLE_EQ(iterated_lebesgue_norm(f, MixedNormSpec(ExponentVector({1.0, 1.0}))), 0.125);
  EXPECT_DOUBLE_EQ(iterated_lebesgue_norm(f, MixedNormSpec(ExponentVector({kInf, kInf}))), 1.0);
  EXPECT_DOUBLE_EQ(iterated_lebesgue_norm(f, MixedNormSpec(ExponentVector({2.0, 1.0}))),
                   std::sqrt(0.5) * 0.25);
}

TEST(IteratedLebesgueNorm, UnitStepsMatchSequence) {
  const SignalNd f = test::random_signal(GridSpec({6, 5}), 8);
  const MixedNormSpec spec(ExponentVector({0.5, kInf}), {1, 0}, Weight::exponential(2, 0.1));
  EXPECT_LE(test::rel_err(iterated_lebesgue_norm(f, spec), iterated_seq_norm(SequenceNd::from_signal(f), spec)), 1e-12);
}

TEST(IteratedLebesgueNorm, AgreesWithOracle) {
  const GridSpec g({6, 4}, {0.5, 2.0});
  const SignalNd f = test::random_signal(g, 9);
  for (const Permutation& sigma : test::all_permutations(2))
    for (const Weight& w : test::weight_zoo(2)) {
      const MixedNormSpec spec(ExponentVector({0.5, 3.0}), sigma, w);
      EXPECT_LE(test::rel_err(iterated_lebesgue_norm(f, spec), oracle::iterated_lebesgue_norm(f, spec)), 1e-12);
    }
}

TEST(IteratedLebesgueNorm, RejectsForeignStep) {
  const SignalNd f = test::random_signal(GridSpec({4}, {0.5}), 1);
  EXPECT_THROW(iterated_lebesgue_norm(f, MixedNormSpec(ExponentVector({1.0}), {}, {}, {2.0})), Error);
}

TEST(WienerNorm, DegenerateCases) {
  const GridSpec g({8, 4});
  const SignalNd one(g, std::vector<cplx>(g.size(), 1.0));
  const std::vector<std::size_t> block{2, 2}, unit{1, 1};
  EXPECT_DOUBLE_EQ(wiener_norm(one, Weight::constant(2), kInf, ExponentVector({kInf, kInf}), {0, 1}, block), 1.0);
  const SignalNd delta = standard_signal(g, SignalKind::delta);
  EXPECT_DOUBLE_EQ(wiener_norm(delta, Weight::constant(2), kInf, ExponentVector({1.0, 1.0}), {0, 1}, block), 1.0);

  const SignalNd f = test::random_signal(g, 10);
  const Weight w = Weight::polynomial(2, 1.0);
  const ExponentVector p({1.0, 2.0});
  const double plain = iterated_seq_norm(SequenceNd::from_signal(f), MixedNormSpec(p, {1, 0}, w));
  EXPECT_LE(test::rel_err(wiener_norm(f, w, kInf, p, {1, 0}, unit), plain), 1e-12);
}

TEST(WienerNorm, LocalExponent) {
  // One block covering the whole grid: global norm is the local L^q norm.
  const GridSpec g({4}, {0.5});
  const SignalNd f(g, {1.0, 2.0, 0.0, 2.0});
  const std::vector<std::size_t> block{4};
  EXPECT_DOUBLE_EQ(wiener_norm(f, Weight::constant(1), 1.0, ExponentVector({1.0}), {0}, block), 2.5);
  EXPECT_DOUBLE_EQ(wiener_norm(f, Weight::constant(1), 2.0, ExponentVector({1.0}), {0}, block), std::sqrt(4.5));
  EXPECT_THROW(wiener_norm(f, Weight::constant(1), 1.0, ExponentVector({1.0}), {0}, std::vector<std::size_t>{3}),
               Error);
}

TEST(EmbeddingRatio, Laws) {
  detail::Rng rng(12);
  const MixedNormSpec s1(ExponentVector({1.0, 1.0}));
  const MixedNormSpec s2(ExponentVector({2.0, 2.0}));
  const Weight w1 = Weight::polynomial(2, 2.0), w2 = Weight::polynomial(2, 1.0);
  for (int i = 0; i < 50; ++i) {
    const SequenceNd a = test::random_sequence({5, 4}, rng, SequenceNd::IndexMode::box, {-2, -1});
    EXPECT_EQ(norm_embedding_ratio(a, s1, s1), 1.0);
    EXPECT_LE(norm_embedding_ratio(a, s1, s2), 1.0 + 1e-12);
    // sup(w2 / w1) = 1 on Z^2
    EXPECT_LE(norm_embedding_ratio(a, MixedNormSpec(ExponentVector({0.5, 1.0}), {}, w1),
                                   MixedNormSpec(ExponentVector({1.0, kInf}), {}, w2)),
              1.0 + 1e-12);
  }
  const SequenceNd zero({2}, {0.0, 0.0});
  EXPECT_EQ(norm_embedding_ratio(zero, MixedNormSpec(ExponentVector({1.0})), MixedNormSpec(ExponentVector({2.0}))),
            1.0);
}

TEST(QuasiTriangle, RandomPairs) {
  detail::Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const SequenceNd a = test::random_sequence({4, 3}, rng), b = test::random_sequence({4, 3}, rng);
    const ExponentVector p({rng.pick<double>({0.5, 1.0, 2.0, kInf}), rng.pick<double>({0.5, 1.0, 2.0, kInf})});
    const MixedNormSpec spec(p, {1, 0}, Weight::polynomial(2, 1.0));
    const double r = p.r();
    const double lhs = std::pow(iterated_seq_norm(a + b, spec), r);
    const double rhs = std::pow(iterated_seq_norm(a, spec), r) + std::pow(iterated_seq_norm(b, spec), r);
    EXPECT_LE(lhs, rhs * (1 + 1e-12));
  }
}

TEST(Collapse, Factors) {
  const std::vector<std::size_t> shape{2, 2}, sigma{0, 1};
  const double v = detail::collapse({1, 1, 1, 1}, shape, sigma, ExponentVector({1.0, 1.0}),
                                    std::vector<double>{0.5, 3.0});
  EXPECT_DOUBLE_EQ(v, 6.0);
}

}  // namespace
}  // namespace tfmod
