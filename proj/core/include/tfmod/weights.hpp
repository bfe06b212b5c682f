#pragma once

// Closed-form weight families on R^d and empirical moderateness checks.
//
// Families: constant c; polynomial <x>^s = (1 + |x|^2)^{s/2};
// exponential exp(r |x|^{1/s}) with s >= 1; anisotropic products of 1-d
// weights; pointwise products, sums and reciprocals; dilations w(theta * x).
// `tilt` (exp(<u, x>)) is the one non-even family; it exists to exercise the
// evenness check of submultiplicative weights.

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tfmod/grid.hpp"

namespace tfmod {

class Weight {
 public:
  enum class Family { constant, polynomial, exponential, tilt, anisotropic, product, sum, reciprocal, dilation };

  /// Largest |log w| accepted on a grid; keeps every value below 1e300.
  static constexpr double kMaxLogMagnitude = 690.0;

  static Weight constant(std::size_t dim, double value = 1.0);
  static Weight polynomial(std::size_t dim, double s);
  static Weight exponential(std::size_t dim, double r, double s = 1.0);
  static Weight tilt(std::vector<double> direction);
  /// Per-axis product of one-dimensional weights.
  static Weight anisotropic(std::vector<Weight> factors);

  Weight reciprocal() const;
  /// x -> w(theta_1 x_1, ..., theta_d x_d), the pullback w o T_theta.
  Weight dilated(std::vector<double> theta) const;

  friend Weight operator*(const Weight& a, const Weight& b);
  friend Weight operator+(const Weight& a, const Weight& b);

  std::size_t dim() const noexcept;
  Family family() const noexcept;
  /// Even under x -> -x for every x (structural: false only if a tilt factor is present).
  bool is_even() const noexcept;

  double eval(std::span<const double> x) const;
  double log_eval(std::span<const double> x) const;

  /// Upper bound of |log w| over the box prod [-radius_i, radius_i].
  double log_bound(std::span<const double> radius) const;
  /// Throws when the weight would leave [1e-300, 1e300] on the grid's fundamental domain.
  void check_on_grid(const GridSpec& grid) const;

  /// Immediate operands of composite families (empty for leaves).
  std::vector<Weight> children() const;
  /// Family parameters of leaves: constant {c}; polynomial {s}; exponential {r, s};
  /// tilt {u...}; dilation {theta...}.
  std::vector<double> params() const;

  bool operator==(const Weight& other) const;

  struct Node;

 private:
  explicit Weight(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(Weight::Family family);

/// Values of w at every point of a grid (symmetric representatives times step).
std::vector<double> sample_on_grid(const Weight& w, const GridSpec& grid);

struct ModerationCertificate {
  /// max over sampled (x, y) of w(x + y) / (w(x) v(y)).
  double c_estimate = 0.0;
  double radius = 0.0;
  double bound = std::numeric_limits<double>::infinity();
  bool even = true;
  bool passed = false;
};

/// Samples x and y on the grid linspace(-radius, radius, samples) per axis
/// (odd `samples` puts the origin on the grid).
ModerationCertificate moderation_constant(const Weight& omega, const Weight& v, double radius,
                                          std::size_t samples_per_axis,
                                          double bound = std::numeric_limits<double>::infinity());

/// moderation_constant with omega = v, plus an evenness check v(-x) = v(x)
/// (relative 1e-12) at the samples. Evenness failure is reported, not thrown.
ModerationCertificate check_submultiplicative(const Weight& v, double radius, std::size_t samples_per_axis,
                                              double bound = std::numeric_limits<double>::infinity());

/// Exact moderation constant on the torus for shifts drawn from a sublattice:
/// max over grid points x and lattice shifts s = T_theta j of
/// omega(x) / (omega(x - s) v(s)), with all points at symmetric representatives.
/// `theta` divides the grid per axis.
ModerationCertificate lattice_moderation_constant(const Weight& omega, const Weight& v, const GridSpec& grid,
                                                  std::span<const std::size_t> theta);

/// (Theta_rho v)(z) = v(z) <z>^rho on phase space (v.dim() even).
Weight theta_rho(const Weight& v, double rho);

/// Lower bound 2d(1 - r)/r that rho must strictly exceed; r in (0, 1].
double required_rho(std::size_t d, double r);

}  // namespace tfmod
