#pragma once

// Shared fixtures for the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "tfmod/detail/rng.hpp"
#include "tfmod/grid.hpp"
#include "tfmod/mixed_norms.hpp"
#include "tfmod/weights.hpp"

namespace tfmod::test {

inline double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline SignalNd random_signal(const GridSpec& g, std::uint64_t seed) {
  SignalParams p;
  p.seed = seed;
  return standard_signal(g, SignalKind::random, p);
}

inline SequenceNd random_sequence(std::vector<std::size_t> shape, detail::Rng& rng,
                                  SequenceNd::IndexMode mode = SequenceNd::IndexMode::box, MultiIndex origin = {}) {
  std::size_t total = 1;
  for (std::size_t s : shape) total *= s;
  std::vector<cplx> data(total);
  for (auto& z : data) z = {rng.normal(), rng.normal()};
  return SequenceNd(std::move(shape), std::move(data), std::move(origin), mode);
}

inline SequenceNd nonneg_sequence(std::vector<std::size_t> shape, detail::Rng& rng,
                                  SequenceNd::IndexMode mode = SequenceNd::IndexMode::torus) {
  std::size_t total = 1;
  for (std::size_t s : shape) total *= s;
  std::vector<cplx> data(total);
  for (auto& z : data) z = rng.uniform();
  return SequenceNd(std::move(shape), std::move(data), {}, mode);
}

inline std::vector<Permutation> all_permutations(std::size_t d) {
  std::vector<Permutation> out;
  Permutation sigma = identity_permutation(d);
  do out.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

/// Periodized Gaussian exp(-pi (t - c)^2 / N) summed over periods, centered
/// at c = shift on every axis, l^2-normalized.
inline SignalNd periodic_gaussian(const GridSpec& g, double shift) {
  std::vector<cplx> v(g.size());
  std::vector<std::int64_t> idx(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.unflat(i, idx);
    double value = 1.0;
    for (std::size_t a = 0; a < g.dim(); ++a) {
      const double n = static_cast<double>(g.n(a));
      double s = 0.0;
      for (int k = -3; k <= 3; ++k) {
        const double u = static_cast<double>(idx[a]) - shift + k * n;
        s += std::exp(-std::numbers::pi * u * u / n);
      }
      value *= s;
    }
    v[i] = value;
  }
  return normalized(SignalNd(g, std::move(v)));
}

inline SignalNd unit_gaussian(const GridSpec& g) {
  SignalParams p;
  p.normalize = true;
  return standard_signal(g, SignalKind::gaussian, p);
}

/// One weight from each shipped family, sized for `d` coordinates.
inline std::vector<Weight> weight_zoo(std::size_t d) {
  std::vector<double> u(d), theta(d);
  for (std::size_t i = 0; i < d; ++i) {
    u[i] = 0.1 * static_cast<double>(i + 1);
    theta[i] = 0.5 + 0.25 * static_cast<double>(i);
  }
  std::vector<Weight> axes;
  for (std::size_t i = 0; i < d; ++i) axes.push_back(i % 2 ? Weight::exponential(1, 0.2) : Weight::polynomial(1, 1.5));
  return {Weight::constant(d, 2.5),
          Weight::polynomial(d, 2.0),
          Weight::polynomial(d, -1.0),
          Weight::exponential(d, 0.3, 2.0),
          Weight::tilt(u),
          Weight::anisotropic(axes),
          Weight::polynomial(d, 1.0) * Weight::exponential(d, 0.1),
          Weight::polynomial(d, 1.0) + Weight::constant(d, 3.0),
          Weight::polynomial(d, 2.0).reciprocal(),
          Weight::polynomial(d, 1.0).dilated(theta)};
}

}  // namespace tfmod::test
