#pragma once

// Discrete STFT and Gabor analysis/synthesis on separable lattices
// a Z_N x b Z_N of the finite torus.
//
// Normalization (M = prod N_i):
//   V_phi f(x, xi) = M^{-1/2} sum_y f(y) conj(phi(y - x)) exp(-2 pi i <y, xi/N>)
//   C_phi f(j, k)  = V_phi f(a j, b k)
//   D_psi c        = sum_{j,k} c(j, k) pi(a j, b k) psi          (kSynthesisScale = 1)
//   S_{phi,psi}    = D_psi C_phi
// so <D_phi c, g> = sqrt(M) <c, C_phi g>, the full lattice gives
// S_{phi,phi} = sqrt(M) ||phi||^2 I, and psi = S_{phi,phi}^{-1} phi is the
// canonical dual with D_psi C_phi = D_phi C_psi = I.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tfmod/grid.hpp"

namespace tfmod {

inline constexpr double kSynthesisScale = 1.0;

struct LatticeSpec {
  /// Time step per axis.
  std::vector<std::size_t> a;
  /// Frequency step per axis.
  std::vector<std::size_t> b;

  /// Throws unless every a_i and b_i divides N_i.
  void validate(const GridSpec& grid) const;
  /// prod N_i / (a_i b_i).
  double redundancy(const GridSpec& grid) const;
  /// N_i / a_i per axis.
  std::vector<std::size_t> time_shape(const GridSpec& grid) const;
  /// N_i / b_i per axis.
  std::vector<std::size_t> freq_shape(const GridSpec& grid) const;

  bool operator==(const LatticeSpec&) const = default;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

class GaborSystem {
 public:
  GaborSystem(SignalNd window, LatticeSpec lattice, std::optional<SignalNd> dual = {});

  const GridSpec& grid() const noexcept { return window_.grid(); }
  const SignalNd& window() const noexcept { return window_; }
  const LatticeSpec& lattice() const noexcept { return lattice_; }
  const std::optional<SignalNd>& dual() const noexcept { return dual_; }
  const std::optional<FrameBounds>& frame_bounds() const noexcept { return bounds_; }

  GaborSystem with_dual(SignalNd dual) const;
  GaborSystem with_frame_bounds(FrameBounds bounds) const;

 private:
  SignalNd window_;
  LatticeSpec lattice_;
  std::optional<SignalNd> dual_;
  std::optional<FrameBounds> bounds_;
};

/// Coefficients on Lambda_1 x Lambda_2, stored row-major over (j..., k...).
class GaborCoeffs {
 public:
  GaborCoeffs(GridSpec grid, LatticeSpec lattice, std::vector<cplx> data);

  const GridSpec& grid() const noexcept { return grid_; }
  const LatticeSpec& lattice() const noexcept { return lattice_; }
  std::span<const cplx> data() const noexcept { return data_; }
  std::size_t time_count() const noexcept { return time_count_; }
  std::size_t freq_count() const noexcept { return freq_count_; }
  const cplx& operator()(std::size_t j_flat, std::size_t k_flat) const { return data_[j_flat * freq_count_ + k_flat]; }
  /// Shape (N/a..., N/b...) of the coefficient array.
  std::vector<std::size_t> shape() const;

 private:
  GridSpec grid_;
  LatticeSpec lattice_;
  std::vector<cplx> data_;
  std::size_t time_count_ = 1;
  std::size_t freq_count_ = 1;
};

enum class WindowRole { window, dual };

PhaseSpaceSignal stft(const SignalNd& f, const SignalNd& phi);

GaborCoeffs analysis(const SignalNd& f, const GaborSystem& sys, WindowRole role = WindowRole::window);
SignalNd synthesis(const GaborCoeffs& c, const GaborSystem& sys, WindowRole role = WindowRole::window);

/// S_{phi,phi} f.
SignalNd frame_operator_apply(const SignalNd& f, const GaborSystem& sys);
/// D_{synth} C_{anal} f for any combination of window and dual.
SignalNd mixed_frame_operator_apply(const SignalNd& f, const GaborSystem& sys, WindowRole anal, WindowRole synth);

/// Extreme eigenvalues of S_{phi,phi}. The operator is block diagonal over
/// residues y mod N/b (blocks of prod b_i points); blocks up to 4096 points
/// use a dense Hermitian eigensolver, larger ones power iteration.
FrameBounds frame_bounds(const GaborSystem& sys, std::size_t max_iter = 5000);

inline constexpr double kFrameTolerance = 1e-10;

struct DualResult {
  SignalNd dual;
  std::size_t iterations = 0;
  /// ||S psi - phi|| / ||phi||.
  double residual = 0.0;
};

/// Solves S_{phi,phi} psi = phi by conjugate gradients.
DualResult canonical_dual(const GaborSystem& sys, double tol = 1e-12, std::size_t max_iter = 1000);
/// Convenience: system with the canonical dual attached.
GaborSystem with_canonical_dual(const GaborSystem& sys, double tol = 1e-12, std::size_t max_iter = 1000);
/// S^{-1/2} phi; its Gabor system has S = I.
SignalNd canonical_tight(const GaborSystem& sys);

struct Reconstruction {
  /// D_psi C_phi f
  SignalNd from_window_coeffs;
  /// D_phi C_psi f
  SignalNd from_dual_coeffs;
  /// Larger of the two relative errors.
  double residual = 0.0;
};

Reconstruction reconstruct(const SignalNd& f, const GaborSystem& sys);

/// ||S pi(j,k) f - pi(j,k) S f|| / ||f||; (j, k) must be a lattice point.
double frame_op_covariance_residual(const GaborSystem& sys, const SignalNd& f, std::span<const std::int64_t> j,
                                    std::span<const std::int64_t> k);

namespace detail {

/// Same quantity without the lattice check (negative controls only).
double covariance_residual_unchecked(const GaborSystem& sys, const SignalNd& f, std::span<const std::int64_t> j,
                                     std::span<const std::int64_t> k);

}  // namespace detail

}  // namespace tfmod
