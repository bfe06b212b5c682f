#pragma once

// Finite discrete model of R^d: the cyclic group Z_N1 x ... x Z_Nd with a
// unitary DFT, cyclic translations, modulations and time-frequency shifts.
//
// Storage is row-major: axis 0 varies slowest. A grid index i on an axis of
// length N is mapped to the symmetric representative in [-N/2, N/2) whenever
// a physical coordinate is needed (weights, Gaussians, supports).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tfmod {

using cplx = std::complex<double>;
using MultiIndex = std::vector<std::int64_t>;

class GridSpec {
 public:
  static constexpr std::size_t kMaxCells = std::size_t{1} << 28;
  static constexpr std::size_t kMaxDim = 8;

  /// `step` defaults to all ones when empty.
  explicit GridSpec(std::vector<std::size_t> n, std::vector<double> step = {});

  std::size_t dim() const noexcept { return n_.size(); }
  std::span<const std::size_t> n() const noexcept { return n_; }
  std::span<const double> step() const noexcept { return step_; }
  std::size_t n(std::size_t axis) const { return n_.at(axis); }
  double step(std::size_t axis) const { return step_.at(axis); }
  std::size_t size() const noexcept { return size_; }
  double cell_volume() const noexcept;

  /// Row-major flat offset of a multi-index; components are reduced mod N.
  std::size_t flat(std::span<const std::int64_t> idx) const;
  /// Inverse of flat(): writes indices in [0, N_i) into `out`.
  void unflat(std::size_t offset, std::span<std::int64_t> out) const;
  MultiIndex unflat(std::size_t offset) const;

  /// Physical coordinate of a flat offset: symmetric representative times step.
  void position(std::size_t offset, std::span<double> out) const;

  bool operator==(const GridSpec&) const = default;

 private:
  std::vector<std::size_t> n_;
  std::vector<double> step_;
  std::size_t size_ = 1;
};

/// Representative of i mod n in [-n/2, n/2).
std::int64_t symmetric_rep(std::int64_t i, std::size_t n) noexcept;
std::int64_t wrap_index(std::int64_t i, std::size_t n) noexcept;

/// Phase space Z_N^d x Z_N^d: axes (x_1..x_d, xi_1..xi_d), steps (h_i, 1/h_i),
/// so every (x_i, xi_i) cell has unit area and the Moyal identity holds for
/// counting norms.
GridSpec phase_space(const GridSpec& base);

/// Complex array on a grid. Immutable; every entry is finite.
class SignalNd {
 public:
  SignalNd(GridSpec grid, std::vector<cplx> data);
  static SignalNd zeros(GridSpec grid);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const cplx> data() const noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  const cplx& at(std::span<const std::int64_t> idx) const { return data_[grid_.flat(idx)]; }

  /// Counting l^2 norm (no cell volume).
  double norm2() const noexcept;
  bool is_zero() const noexcept;

  SignalNd scaled(cplx lambda) const;
  SignalNd conj() const;

 private:
  GridSpec grid_;
  std::vector<cplx> data_;
};

/// Counting inner product <f, g> = sum f conj(g).
cplx inner(const SignalNd& f, const SignalNd& g);
SignalNd operator+(const SignalNd& f, const SignalNd& g);
SignalNd operator-(const SignalNd& f, const SignalNd& g);
/// Counting l^2 distance ||f - g||.
double distance(const SignalNd& f, const SignalNd& g);

/// Unitary DFT: fhat(k) = (prod N)^{-1/2} sum_y f(y) exp(-2 pi i <y,k/N>).
SignalNd dft(const SignalNd& f);
SignalNd idft(const SignalNd& f);

/// out[m] = f[m - shift mod N].
SignalNd translate(const SignalNd& f, std::span<const std::int64_t> shift);
/// out[m] = exp(2 pi i <m, k/N>) f[m].
SignalNd modulate(const SignalNd& f, std::span<const std::int64_t> k);
/// pi(j, k) f = modulate(translate(f, j), k).
SignalNd tf_shift(const SignalNd& f, std::span<const std::int64_t> j,
                  std::span<const std::int64_t> k);

/// Phase-space array V(x, xi) over Z_N^d x Z_N^d.
class PhaseSpaceSignal {
 public:
  PhaseSpaceSignal(GridSpec base, std::vector<cplx> data);

  const GridSpec& base() const noexcept { return base_; }
  /// The same values viewed as a signal on phase_space(base()).
  const SignalNd& values() const noexcept { return values_; }
  std::span<const cplx> data() const noexcept { return values_.data(); }
  const cplx& operator()(std::size_t x_flat, std::size_t xi_flat) const {
    return values_[x_flat * base_.size() + xi_flat];
  }

 private:
  GridSpec base_;
  SignalNd values_;
};

enum class SignalKind { gaussian, hermite, delta, random, block };

SignalKind signal_kind_from_string(const std::string& name);
std::string to_string(SignalKind kind);

struct SignalParams {
  /// Gaussian width per axis, exp(-pi t^2 / w); empty means w_i = N_i.
  std::vector<double> width;
  /// Hermite order (creation operator applied `order` times along every axis).
  int order = 1;
  /// Delta position; empty means the origin.
  MultiIndex position;
  /// Block half-width per axis (|rep| <= radius); for `random` an optional
  /// support restriction, empty meaning the whole grid.
  std::vector<double> radius;
  std::uint64_t seed = 0;
  bool normalize = false;
};

/// Deterministic test-signal generator.
SignalNd standard_signal(const GridSpec& grid, SignalKind kind, const SignalParams& params = {});

/// f / ||f||; throws on the zero signal.
SignalNd normalized(const SignalNd& f);

}  // namespace tfmod
