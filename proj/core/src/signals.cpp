#include <cmath>
#include <numbers>

#include "tfmod/detail/rng.hpp"
#include "tfmod/error.hpp"
#include "tfmod/grid.hpp"

namespace tfmod {

SignalKind signal_kind_from_string(const std::string& name) {
  if (name == "gaussian") return SignalKind::gaussian;
  if (name == "hermite") return SignalKind::hermite;
  if (name == "delta") return SignalKind::delta;
  if (name == "random") return SignalKind::random;
  if (name == "block") return SignalKind::block;
  throw Error(ErrorCode::invalid_argument, "unknown signal kind '" + name + "'");
}

std::string to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::gaussian: return "gaussian";
    case SignalKind::hermite: return "hermite";
    case SignalKind::delta: return "delta";
    case SignalKind::random: return "random";
    case SignalKind::block: return "block";
  }
  return "unknown";
}

namespace {

std::vector<double> per_axis(const std::vector<double>& values, const GridSpec& grid, const char* what,
                             bool use_n_default) {
  if (values.empty()) {
    std::vector<double> out(grid.dim());
    for (std::size_t i = 0; i < grid.dim(); ++i) out[i] = use_n_default ? static_cast<double>(grid.n(i)) : 0.0;
    return out;
  }
  if (values.size() == 1) return std::vector<double>(grid.dim(), values[0]);
  if (values.size() != grid.dim()) {
    throw Error(ErrorCode::dimension_mismatch, std::string(what) + " needs one entry per axis");
  }
  return values;
}

// Periodized exp(-pi t^2 / w) along one axis, summed symmetrically so the
// result is exactly even under index negation mod N.
std::vector<double> periodized_gaussian(std::size_t n, double w) {
  if (!(w > 0.0)) throw Error(ErrorCode::invalid_argument, "gaussian width must be positive");
  const auto g = [w](double t) { return std::exp(-std::numbers::pi * t * t / w); };
  const double period = static_cast<double>(n);
  const int wraps = 2 + static_cast<int>(std::ceil(std::sqrt(40.0 * w) / period));
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto r = static_cast<double>(symmetric_rep(static_cast<std::int64_t>(j), n));
    double sum = g(r);
    for (int m = 1; m <= wraps; ++m) sum += g(r + m * period) + g(r - m * period);
    out[j] = sum;
  }
  return out;
}

// Discrete creation operator x - (w / 2 pi) d/dx with a cyclic central difference.
std::vector<double> apply_creation(const std::vector<double>& h, double w) {
  const std::size_t n = h.size();
  std::vector<double> out(n);
  const double c = w / (2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < n; ++j) {
    const auto x = static_cast<double>(symmetric_rep(static_cast<std::int64_t>(j), n));
    const double derivative = 0.5 * (h[(j + 1) % n] - h[(j + n - 1) % n]);
    out[j] = x * h[j] - c * derivative;
  }
  return out;
}

SignalNd separable(const GridSpec& grid, const std::vector<std::vector<double>>& factors) {
  std::vector<cplx> data(grid.size());
  MultiIndex idx(grid.dim());
  for (std::size_t m = 0; m < data.size(); ++m) {
    grid.unflat(m, idx);
    double v = 1.0;
    for (std::size_t i = 0; i < grid.dim(); ++i) v *= factors[i][static_cast<std::size_t>(idx[i])];
    data[m] = v;
  }
  return SignalNd(grid, std::move(data));
}

bool inside_block(const GridSpec& grid, std::span<const std::int64_t> idx, const std::vector<double>& radius) {
  for (std::size_t i = 0; i < grid.dim(); ++i) {
    if (std::abs(static_cast<double>(symmetric_rep(idx[i], grid.n(i)))) > radius[i]) return false;
  }
  return true;
}

}  // namespace

SignalNd standard_signal(const GridSpec& grid, SignalKind kind, const SignalParams& params) {
  SignalNd out = SignalNd::zeros(grid);
  switch (kind) {
    case SignalKind::gaussian: {
      const auto width = per_axis(params.width, grid, "gaussian width", true);
      std::vector<std::vector<double>> factors(grid.dim());
      for (std::size_t i = 0; i < grid.dim(); ++i) factors[i] = periodized_gaussian(grid.n(i), width[i]);
      out = separable(grid, factors);
      break;
    }
    case SignalKind::hermite: {
      if (params.order < 0) throw Error(ErrorCode::invalid_argument, "hermite order must be non-negative");
      const auto width = per_axis(params.width, grid, "hermite width", true);
      std::vector<std::vector<double>> factors(grid.dim());
      for (std::size_t i = 0; i < grid.dim(); ++i) {
        factors[i] = periodized_gaussian(grid.n(i), width[i]);
        for (int k = 0; k < params.order; ++k) factors[i] = apply_creation(factors[i], width[i]);
      }
      out = normalized(separable(grid, factors));
      break;
    }
    case SignalKind::delta: {
      MultiIndex pos = params.position.empty() ? MultiIndex(grid.dim(), 0) : params.position;
      if (pos.size() != grid.dim()) throw Error(ErrorCode::dimension_mismatch, "delta position needs one entry per axis");
      std::vector<cplx> data(grid.size());
      data[grid.flat(pos)] = 1.0;
      out = SignalNd(grid, std::move(data));
      break;
    }
    case SignalKind::random: {
      detail::Rng rng(params.seed);
      const bool restricted = !params.radius.empty();
      const auto radius = per_axis(params.radius, grid, "random support radius", false);
      std::vector<cplx> data(grid.size());
      MultiIndex idx(grid.dim());
      for (std::size_t m = 0; m < data.size(); ++m) {
        const double re = rng.normal();
        const double im = rng.normal();
        grid.unflat(m, idx);
        if (!restricted || inside_block(grid, idx, radius)) data[m] = cplx(re, im);
      }
      out = SignalNd(grid, std::move(data));
      break;
    }
    case SignalKind::block: {
      const auto radius = per_axis(params.radius, grid, "block radius", false);
      std::vector<cplx> data(grid.size());
      MultiIndex idx(grid.dim());
      for (std::size_t m = 0; m < data.size(); ++m) {
        grid.unflat(m, idx);
        if (inside_block(grid, idx, radius)) data[m] = 1.0;
      }
      out = SignalNd(grid, std::move(data));
      break;
    }
  }
  return params.normalize ? normalized(out) : out;
}

SignalNd normalized(const SignalNd& f) {
  const double n = f.norm2();
  if (n == 0.0) throw Error(ErrorCode::invalid_argument, "cannot normalize the zero signal");
  return f.scaled(1.0 / n);
}

}  // namespace tfmod
