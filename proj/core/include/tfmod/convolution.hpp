#pragma once

// Discrete and semi-discrete convolutions, dilation pullbacks, and numeric
// checkers for weighted convolution estimates on the torus.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tfmod/grid.hpp"
#include "tfmod/mixed_norms.hpp"
#include "tfmod/weights.hpp"

namespace tfmod {

enum class ConvMode { cyclic, zero_padded };

/// (a * b)(j) = sum_m a(m) b(j - m). Cyclic mode needs equal shapes and keeps
/// the index box of `a`; zero-padded mode returns the box of all sums
/// (shape a + shape b - 1, origin a + origin b).
SequenceNd conv(const SequenceNd& a, const SequenceNd& b, ConvMode mode);

/// (a *_[theta] f)(x) = sum_j a(j) f(x - theta j), translations cyclic on the
/// grid. Coordinates of `a` are reduced modulo N / theta.
SignalNd semidiscrete_conv(const SequenceNd& a, const SignalNd& f, std::span<const std::size_t> theta);

/// out[j] = f[theta j]; the result lives on the grid of N / theta points per
/// axis with the same step, so its physical positions x satisfy
/// theta x = position of f[theta j].
SignalNd dilation_pullback(const SignalNd& f, std::span<const std::size_t> theta);

/// Cyclic convolution of grid signals with Riemann measure:
/// (f1 * f2)(x) = sum_y f1(y) f2(x - y) * cell volume.
SignalNd grid_conv(const SignalNd& f1, const SignalNd& f2);

struct ConvEstimateReport {
  std::string estimate;
  double lhs = 0.0;
  /// Named right-hand-side factors (norms and constants).
  std::vector<std::pair<std::string, double>> rhs_factors;
  /// Product of every rhs factor.
  double constant_bound = 0.0;
  double ratio = 0.0;
  double tolerance = 1e-10;
  bool passed = false;
  std::uint64_t seed = 0;
  std::string descriptor;
};

/// Checker inputs for the weighted semi-discrete estimate
/// ||a *_[theta] f||_{L^p_sigma(omega)} <= C ||a||_{l^r_sigma(v o T_theta)} ||f||_{L^p_sigma(omega)}
/// with r_k = min_{m <= k}(1, p_m) and C the exact torus moderation constant.
struct SemidiscreteCase {
  GridSpec grid;
  std::vector<std::size_t> theta;
  ExponentVector p;
  Permutation sigma;
  Weight omega;
  Weight v;
  double tolerance = 1e-10;
};

/// r_k = min_{m <= k}(1, p_m) along the collapse order.
ExponentVector maximal_young_exponents(const ExponentVector& p);

/// Explicit instance.
ConvEstimateReport check_semidiscrete_estimate(const SemidiscreteCase& c, const SequenceNd& a, const SignalNd& f);
/// Random a on Z_{N/theta} and random f drawn from `seed`.
ConvEstimateReport check_semidiscrete_estimate(const SemidiscreteCase& c, std::uint64_t seed);

/// Inputs for the Wiener-space convolution estimates.
///  part 1: ||f1 * f2||_{W^{q0}(omega0, l^{p0})} <= K ||f1||_{W^{q1}(omega1, l^{p1})} ||f2||_{W^{q2}(omega2, l^{p2})}
///  part 2: ||a *_[theta] f||_{W(omega0, l^{p0})} <= K ||a||_{l^{p1}(omega1 o T_theta)} ||f||_{W(omega2, l^{p2})}
/// Exponents must satisfy the discrete Young chain (see admissible_young_chain).
struct WienerConvCase {
  GridSpec grid;
  std::vector<std::size_t> block;
  std::array<double, 3> q{1.0, 1.0, 1.0};  // q0, q1, q2
  std::array<ExponentVector, 3> p;         // p0, p1, p2
  Permutation sigma;
  std::array<Weight, 3> omega;             // omega0, omega1, omega2
  /// Part 2 only; every entry a multiple of the block size.
  std::vector<std::size_t> theta;
  double tolerance = 1e-10;
};

/// True when l^{p1}_sigma * l^{p2}_sigma is contained in l^{p0}_sigma with
/// norm <= 1 on counting measure, certified axis by axis along sigma: with a
/// running power P (initially 1) each axis either satisfies the Young
/// relation 1 + P/p0 = P/p1 + P/p2 with all p/P >= 1, or has
/// p0 = p1 = p2 <= P, which lowers P to that value.
bool admissible_young_chain(const ExponentVector& p0, const ExponentVector& p1, const ExponentVector& p2,
                            std::span<const std::size_t> sigma);

ConvEstimateReport check_wiener_conv_estimate(const WienerConvCase& c, const SignalNd& f1, const SignalNd& f2);
ConvEstimateReport check_wiener_conv_estimate(const WienerConvCase& c, const SequenceNd& a, const SignalNd& f);
/// Random instance of part 1 (`part == 1`) or part 2 (`part == 2`).
ConvEstimateReport check_wiener_conv_estimate(const WienerConvCase& c, int part, std::uint64_t seed);

/// Inputs for the dilation estimate
/// ||T_theta^* f||_{W^q(T_theta^* omega, l^p_sigma)}
///   <= C (prod theta_k^{-1/q} floor(1 + 1/theta_k)^{1/p_{sigma(k)}}) ||f||_{W^q(omega, l^p_sigma)}.
struct DilationCase {
  GridSpec grid;
  std::vector<std::size_t> theta;
  std::vector<std::size_t> block;
  double q = kInf;
  ExponentVector p;
  Permutation sigma;
  Weight omega;
  double tolerance = 1e-10;
};

ConvEstimateReport check_dilation_estimate(const DilationCase& c, const SignalNd& f);
ConvEstimateReport check_dilation_estimate(const DilationCase& c, std::uint64_t seed);

struct SweepSummary {
  std::string estimate;
  std::size_t instances = 0;
  std::size_t failures = 0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  /// ratio_max / ratio_min over the sweep.
  double spread = 0.0;
  double spread_bound = 1e3;
  bool passed = false;
  std::vector<ConvEstimateReport> reports;
};

/// Aggregates reports; passed when every instance passed and the spread is
/// within `spread_bound`.
SweepSummary summarize(std::string estimate, std::vector<ConvEstimateReport> reports, double spread_bound = 1e3);

/// Randomized sweeps over the parameter families used by the acceptance
/// suite. Instance i draws from mix_seed(seed, i); `threads` caps workers.
SweepSummary semidiscrete_sweep(std::uint64_t seed, std::size_t instances, std::size_t threads = 1);
SweepSummary dilation_sweep(std::uint64_t seed, std::size_t instances, std::size_t threads = 1);
SweepSummary wiener_conv_sweep(std::uint64_t seed, std::size_t instances, std::size_t threads = 1);

}  // namespace tfmod
