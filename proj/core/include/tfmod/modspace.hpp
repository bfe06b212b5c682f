#pragma once

// Modulation, amalgam and Fourier-Lebesgue norms, and ensemble reports that
// check norm equivalences and embeddings on random signals.
//
// Phase space has axes (x_1..x_d, xi_1..xi_d) with steps (h, 1/h); weights on
// phase space have dimension 2d and are sampled at symmetric representatives.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tfmod/gabor.hpp"
#include "tfmod/grid.hpp"
#include "tfmod/mixed_norms.hpp"
#include "tfmod/weights.hpp"

namespace tfmod {

struct ModNormSpec {
  /// Exponents, permutation and weight over the 2d phase-space axes.
  MixedNormSpec norm;
  SignalNd window;
};

struct EquivalenceReport {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<double> ratios;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  /// ratio_max / ratio_min.
  double spread = 0.0;
  double bound = 1e3;
  bool passed = false;
  /// Named constants recorded by the report (for example the embedding c).
  std::map<std::string, double> constants;
  std::map<std::string, std::string> info;
};

inline constexpr double kDefaultSpreadBound = 1e3;

/// Fills ratio_min/ratio_max/spread; passed = all ratios finite and
/// spread <= bound (0/0 spreads count as 1).
void finalize(EquivalenceReport& report);

/// ||V_phi f||_{L^p_sigma(omega)} over phase space.
double modulation_norm(const SignalNd& f, const ModNormSpec& spec);

/// ||V_phi f * omega||_{L^{p,q}_*}: frequency axes collapsed with q first,
/// then time axes with p.
double amalgam_norm(const SignalNd& f, double p, double q, const Weight& omega, const SignalNd& window);

/// The (p, sigma) pair for which modulation_norm equals amalgam_norm.
MixedNormSpec amalgam_as_mixed(std::size_t d, double p, double q, const Weight& omega);

/// L^q Riemann norm of |dft(f)| omega(x_anchor, .) over the frequency grid.
double fourier_lebesgue_norm(const SignalNd& f, double q, const Weight& omega, std::span<const double> x_anchor);

/// Random complex Gaussian signals; signal i uses mix_seed(seed, i).
std::vector<SignalNd> random_ensemble(const GridSpec& grid, std::uint64_t seed, std::size_t n);

/// Ratios ||f||_{M(phi1)} / ||f||_{M(phi2)}.
EquivalenceReport window_independence_report(std::uint64_t seed, std::size_t n_signals, const SignalNd& phi1,
                                             const SignalNd& phi2, const MixedNormSpec& spec,
                                             double bound = kDefaultSpreadBound);

/// Ratios ||f||_{spec2} / ||f||_{spec1}. Requires equal windows and sigma and
/// p1 <= p2. The constant c = sup(omega2 / omega1) * prod_k h_{sigma(k)}^{1/p2_k - 1/p1_k}
/// is exact for the Riemann model; passed = every ratio <= c (1 + tol).
EquivalenceReport embedding_report(std::uint64_t seed, std::size_t n_signals, const ModNormSpec& spec1,
                                   const ModNormSpec& spec2, double tol = 1e-10);

/// Continuous norm against the coefficient norms with window and dual
/// (weights sampled at lattice points). Returns the (window, dual) pair.
std::pair<EquivalenceReport, EquivalenceReport> gabor_equivalence_report(std::uint64_t seed, std::size_t n_signals,
                                                                         const GaborSystem& sys,
                                                                         const MixedNormSpec& spec,
                                                                         double bound = kDefaultSpreadBound);

/// Coefficient quasi-norm ||C f * omega(lattice)||_{l^p_sigma}.
double coefficient_norm(const GaborCoeffs& c, const MixedNormSpec& spec);

/// ||V_{phi1} f||_{L^p_sigma(omega)} / (Wiener norm of V_{phi2} f with blocks
/// `block`, q = inf, scaled by the block volumes prod_k (block h)^{1/p_k}).
EquivalenceReport wiener_equivalence_report(std::uint64_t seed, std::size_t n_signals, const SignalNd& phi1,
                                            const SignalNd& phi2, const MixedNormSpec& spec,
                                            std::span<const std::size_t> block, double bound = kDefaultSpreadBound);

struct CompactSupportCase {
  GridSpec grid;
  /// Signals live on |rep(y)| <= support_radius on every axis.
  double support_radius = 2.0;
  /// Block window radius, at least support_radius.
  double window_radius = 2.0;
  double q = 1.0;
  std::vector<double> p_list{1.0};
  /// Weight on phase space (dimension 2d).
  Weight omega;
};

/// Per signal, max/min over M^{p,q} (p in p_list), W^{p,q} (p in p_list)
/// and FL^q. M and W are evaluated through Gabor coefficients on a lattice
/// whose time step puts every nonzero shift of the window off the support.
EquivalenceReport compact_support_report(std::uint64_t seed, std::size_t n_signals, const CompactSupportCase& c,
                                         double bound = kDefaultSpreadBound);

/// Time step used by compact_support_report: the smallest divisor a of N
/// with |rep(a j)| > support + window radius for every j != 0 (per axis).
std::vector<std::size_t> support_adapted_step(const GridSpec& grid, double support_radius, double window_radius);

struct LocalBoundCase {
  GridSpec grid;
  double p = 0.5;
  /// Ball radius in phase-space index units (Euclidean).
  double radius = 3.0;
  std::size_t n_centers = 20;
  /// Off-center maximum must lie within this factor of the centered one.
  double factor = 2.0;
};

/// |V_phi f(z0)| / ||V_phi f||_{L^p(ball(z0))} with a Gaussian window, for a
/// centered batch (z0 = 0) and random centers.
EquivalenceReport local_bound_report(std::uint64_t seed, std::size_t n_signals, const LocalBoundCase& c);

struct DecayFit {
  /// Largest eigenvalue of the fitted quadratic form (negative when definite).
  double max_eigenvalue = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
  bool passed = false;
};

/// Least-squares quadratic fit of log|V_phi phi| for the Gaussian window of
/// width N (points with |V| >= 1e-8 max). passed = negative definite and R^2 >= 0.999.
DecayFit gaussian_decay_fit(const GridSpec& grid);

}  // namespace tfmod
