#pragma once

// Iterated weighted mixed quasi-norms on finite index boxes and grids, and
// the Wiener amalgam norm built on top of them.
//
// Convention: sigma[k] is the data axis collapsed at step k with exponent
// p[k]. The weight always sees the unpermuted coordinates. Permutations are
// 0-based here; the JSON layer converts to and from 1-based arrays.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tfmod/grid.hpp"
#include "tfmod/weights.hpp"

namespace tfmod {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class ExponentVector {
 public:
  /// Every entry in (0, inf]; infinity stands for a supremum.
  explicit ExponentVector(std::vector<double> p);
  static ExponentVector uniform(std::size_t d, double p);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t k) const { return p_[k]; }
  std::span<const double> values() const noexcept { return p_; }
  double min() const noexcept;
  double max() const noexcept;
  /// min(1, min p): the exponent of the quasi-triangle inequality.
  double r() const noexcept { return std::min(1.0, min()); }

  bool operator==(const ExponentVector&) const = default;

 private:
  std::vector<double> p_;
};

using Permutation = std::vector<std::size_t>;

Permutation identity_permutation(std::size_t d);
/// Throws unless `sigma` is a bijection on {0, ..., d-1}.
void validate_permutation(std::span<const std::size_t> sigma, std::size_t d);
Permutation inverse_permutation(std::span<const std::size_t> sigma);

struct MixedNormSpec {
  /// Missing sigma means the identity; a missing weight means 1; an empty
  /// step means unit spacing.
  MixedNormSpec(ExponentVector p, Permutation sigma = {}, std::optional<Weight> omega = {},
                std::vector<double> step = {});

  std::size_t dim() const noexcept { return p.size(); }

  ExponentVector p;
  Permutation sigma;
  Weight omega;
  /// Physical spacing of the index lattice (theta); weights are evaluated at
  /// coordinate * step.
  std::vector<double> step;
};

/// Finite array on an index box of Z^d. In `box` mode the integer coordinate
/// of entry i is origin + i; in `torus` mode it is the symmetric
/// representative of i modulo the shape.
class SequenceNd {
 public:
  enum class IndexMode { box, torus };

  SequenceNd(std::vector<std::size_t> shape, std::vector<cplx> data, MultiIndex origin = {},
             IndexMode mode = IndexMode::box);
  /// Torus-mode view of a grid signal.
  static SequenceNd from_signal(const SignalNd& f);

  std::size_t dim() const noexcept { return shape_.size(); }
  std::span<const std::size_t> shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const cplx> data() const noexcept { return data_; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  const MultiIndex& origin() const noexcept { return origin_; }
  IndexMode mode() const noexcept { return mode_; }

  /// Box offsets in [0, shape_i) of a flat index.
  void unflat(std::size_t flat, std::span<std::int64_t> out) const;
  /// Integer coordinate of a flat index (see class comment).
  void coordinate(std::size_t flat, std::span<std::int64_t> out) const;

  SequenceNd scaled(cplx lambda) const;
  SequenceNd with_data(std::vector<cplx> data) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<cplx> data_;
  MultiIndex origin_;
  IndexMode mode_;
};

SequenceNd operator+(const SequenceNd& a, const SequenceNd& b);

/// Counting-measure norm: b = |a| * omega(coordinate * step), then axis
/// sigma[k] is collapsed with l^{p[k]} for k = 0, 1, ...
double iterated_seq_norm(const SequenceNd& a, const MixedNormSpec& spec);

/// Riemann-sum model on a grid: as iterated_seq_norm with the grid steps as
/// lattice spacing and each collapse multiplied by h_{sigma[k]}^{1/p[k]}.
/// `spec.step` must be empty or equal to the grid steps.
double iterated_lebesgue_norm(const SignalNd& f, const MixedNormSpec& spec);

/// Wiener amalgam norm with blocks of `block` cells: local L^q Riemann norm
/// on every block times omega at the block corner, then the counting
/// l^p_sigma norm over the block index (weight 1). q = inf is a block sup.
double wiener_norm(const SignalNd& f, const Weight& omega, double q, const ExponentVector& p,
                   const Permutation& sigma, std::span<const std::size_t> block);

/// iterated_seq_norm(a, spec2) / iterated_seq_norm(a, spec1); 0/0 = 1.
double norm_embedding_ratio(const SequenceNd& a, const MixedNormSpec& spec1, const MixedNormSpec& spec2);

namespace detail {

/// Collapses a non-negative array of the given shape axis by axis
/// (axis sigma[k] with exponent p[k]) and multiplies the k-th collapse by
/// factor[k]. An empty `factor` means all ones.
double collapse(std::vector<double> values, std::span<const std::size_t> shape, std::span<const std::size_t> sigma,
                const ExponentVector& p, std::span<const double> factor = {});

}  // namespace detail

}  // namespace tfmod
