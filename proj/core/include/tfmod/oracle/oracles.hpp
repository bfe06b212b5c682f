#pragma once

// Brute-force reference implementations for testing. Every routine works
// straight from the defining sums with no FFTs, no scaling tricks and no
// shared code paths with tfmod_core beyond the container types.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tfmod/gabor.hpp"
#include "tfmod/grid.hpp"
#include "tfmod/mixed_norms.hpp"

namespace tfmod::oracle {

/// Direct O(M^2) unitary DFT (inverse when `inverse`).
SignalNd naive_dft(const SignalNd& f, bool inverse = false);

/// Weighted values, axes permuted into collapse order, then the leading
/// axis summed with plain pow sums until one number is left.
double iterated_norm(const SequenceNd& a, const MixedNormSpec& spec);
/// Same with the Riemann factor h^{1/p} per collapse (grid steps).
double iterated_lebesgue_norm(const SignalNd& f, const MixedNormSpec& spec);

/// V_phi f(x, xi) from the defining triple sum.
PhaseSpaceSignal naive_stft(const SignalNd& f, const SignalNd& phi);

/// Dense M x M matrix (row-major) of D_synth C_anal assembled from the
/// outer products pi(lambda) g (pi(lambda) h)^*.
std::vector<cplx> dense_frame_operator(const GaborSystem& sys, WindowRole anal = WindowRole::window,
                                       WindowRole synth = WindowRole::window);
/// Extreme eigenvalues of the dense frame operator.
FrameBounds dense_frame_bounds(const GaborSystem& sys);

/// a *_[theta] f through an upsampled copy of a and a direct cyclic sum.
SignalNd semidiscrete_conv(const SequenceNd& a, const SignalNd& f, std::span<const std::size_t> theta);

/// Direct cyclic sum (f1 * f2)(x) = sum_y f1(y) f2(x - y) * cell volume.
SignalNd grid_conv(const SignalNd& f1, const SignalNd& f2);

}  // namespace tfmod::oracle
