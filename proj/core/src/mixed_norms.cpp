#include "tfmod/mixed_norms.hpp"

#include <cmath>
#include <numeric>

#include "tfmod/error.hpp"

namespace tfmod {

ExponentVector::ExponentVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw Error(ErrorCode::invalid_argument, "exponent vector must not be empty");
  for (double x : p_) {
    if (std::isnan(x) || !(x > 0.0)) throw Error(ErrorCode::invalid_argument, "exponents must lie in (0, inf]");
  }
}

ExponentVector ExponentVector::uniform(std::size_t d, double p) { return ExponentVector(std::vector<double>(d, p)); }

double ExponentVector::min() const noexcept { return *std::min_element(p_.begin(), p_.end()); }
double ExponentVector::max() const noexcept { return *std::max_element(p_.begin(), p_.end()); }

Permutation identity_permutation(std::size_t d) {
  Permutation sigma(d);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  return sigma;
}

void validate_permutation(std::span<const std::size_t> sigma, std::size_t d) {
  if (sigma.size() != d) throw Error(ErrorCode::dimension_mismatch, "permutation length differs from dimension");
  std::vector<bool> seen(d, false);
  for (std::size_t s : sigma) {
    if (s >= d || seen[s]) throw Error(ErrorCode::invalid_argument, "sigma is not a permutation");
    seen[s] = true;
  }
}

Permutation inverse_permutation(std::span<const std::size_t> sigma) {
  validate_permutation(sigma, sigma.size());
  Permutation inv(sigma.size());
  for (std::size_t k = 0; k < sigma.size(); ++k) inv[sigma[k]] = k;
  return inv;
}

MixedNormSpec::MixedNormSpec(ExponentVector p_in, Permutation sigma_in, std::optional<Weight> omega_in,
                             std::vector<double> step_in)
    : p(std::move(p_in)),
      sigma(sigma_in.empty() ? identity_permutation(p.size()) : std::move(sigma_in)),
      omega(omega_in ? *omega_in : Weight::constant(p.size())),
      step(step_in.empty() ? std::vector<double>(p.size(), 1.0) : std::move(step_in)) {
  validate_permutation(sigma, p.size());
  if (omega.dim() != p.size()) throw Error(ErrorCode::dimension_mismatch, "weight dimension differs from exponent count");
  if (step.size() != p.size()) throw Error(ErrorCode::dimension_mismatch, "step vector length differs from dimension");
  for (double h : step) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::invalid_argument, "lattice steps must be positive");
  }
}

SequenceNd::SequenceNd(std::vector<std::size_t> shape, std::vector<cplx> data, MultiIndex origin, IndexMode mode)
    : shape_(std::move(shape)), data_(std::move(data)), origin_(std::move(origin)), mode_(mode) {
  if (shape_.empty()) throw Error(ErrorCode::invalid_argument, "sequence needs at least one axis");
  std::size_t n = 1;
  for (std::size_t s : shape_) {
    if (s == 0) throw Error(ErrorCode::invalid_argument, "sequence axes must be non-empty");
    n *= s;
  }
  if (n != data_.size()) throw Error(ErrorCode::dimension_mismatch, "sequence data length differs from its shape");
  if (origin_.empty()) origin_.assign(shape_.size(), 0);
  if (origin_.size() != shape_.size()) throw Error(ErrorCode::dimension_mismatch, "origin length differs from shape");
  for (const cplx& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::non_finite, "sequence contains NaN or Inf");
    }
  }
}

SequenceNd SequenceNd::from_signal(const SignalNd& f) {
  const auto n = f.grid().n();
  return SequenceNd(std::vector<std::size_t>(n.begin(), n.end()), std::vector<cplx>(f.data().begin(), f.data().end()),
                    {}, IndexMode::torus);
}

void SequenceNd::unflat(std::size_t flat, std::span<std::int64_t> out) const {
  for (std::size_t i = shape_.size(); i-- > 0;) {
    out[i] = static_cast<std::int64_t>(flat % shape_[i]);
    flat /= shape_[i];
  }
}

void SequenceNd::coordinate(std::size_t flat, std::span<std::int64_t> out) const {
  unflat(flat, out);
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    out[i] = mode_ == IndexMode::torus ? symmetric_rep(out[i], shape_[i]) : out[i] + origin_[i];
  }
}

SequenceNd SequenceNd::scaled(cplx lambda) const {
  std::vector<cplx> out(data_);
  for (cplx& z : out) z *= lambda;
  return with_data(std::move(out));
}

SequenceNd SequenceNd::with_data(std::vector<cplx> data) const { return SequenceNd(shape_, std::move(data), origin_, mode_); }

SequenceNd operator+(const SequenceNd& a, const SequenceNd& b) {
  if (!std::equal(a.shape().begin(), a.shape().end(), b.shape().begin(), b.shape().end()) ||
      a.origin() != b.origin() || a.mode() != b.mode()) {
    throw Error(ErrorCode::dimension_mismatch, "sequences live on different index boxes");
  }
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return a.with_data(std::move(out));
}

namespace detail {

namespace {

// l^p norm of a strided line, scaled by its maximum so that neither tiny nor
// huge entries over- or underflow.
double line_norm(const double* v, std::size_t len, std::size_t stride, double p) {
  double m = 0.0;
  for (std::size_t t = 0; t < len; ++t) m = std::max(m, v[t * stride]);
  if (m == 0.0 || std::isinf(p)) return m;
  double s = 0.0;
  if (p == 1.0) {
    for (std::size_t t = 0; t < len; ++t) s += v[t * stride] / m;
    return m * s;
  }
  if (p == 2.0) {
    for (std::size_t t = 0; t < len; ++t) {
      const double x = v[t * stride] / m;
      s += x * x;
    }
    return m * std::sqrt(s);
  }
  for (std::size_t t = 0; t < len; ++t) s += std::pow(v[t * stride] / m, p);
  return m * std::pow(s, 1.0 / p);
}

}  // namespace

double collapse(std::vector<double> values, std::span<const std::size_t> shape, std::span<const std::size_t> sigma,
                const ExponentVector& p, std::span<const double> factor) {
  const std::size_t d = shape.size();
  if (p.size() != d) throw Error(ErrorCode::dimension_mismatch, "exponent count differs from array dimension");
  validate_permutation(sigma, d);
  if (!factor.empty() && factor.size() != d) throw Error(ErrorCode::dimension_mismatch, "factor count differs");
  std::vector<std::size_t> len(shape.begin(), shape.end());
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t axis = sigma[k];
    std::size_t outer = 1;
    std::size_t inner = 1;
    for (std::size_t i = 0; i < axis; ++i) outer *= len[i];
    for (std::size_t i = axis + 1; i < d; ++i) inner *= len[i];
    const std::size_t n = len[axis];
    const double c = factor.empty() ? 1.0 : factor[k];
    std::vector<double> next(outer * inner);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < inner; ++i) {
        next[o * inner + i] = c * line_norm(values.data() + o * n * inner + i, n, inner, p[k]);
      }
    }
    values = std::move(next);
    len[axis] = 1;
  }
  return values[0];
}

}  // namespace detail

namespace {

std::vector<double> weighted_magnitudes(const SequenceNd& a, const Weight& omega, std::span<const double> step) {
  const std::size_t d = a.dim();
  std::vector<double> out(a.size());
  MultiIndex coord(d);
  std::vector<double> x(d);
  const bool unit_weight = omega.family() == Weight::Family::constant && omega.params()[0] == 1.0;
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double mag = std::abs(a[m]);
    if (unit_weight || mag == 0.0) {
      out[m] = mag;
      continue;
    }
    a.coordinate(m, coord);
    for (std::size_t i = 0; i < d; ++i) x[i] = static_cast<double>(coord[i]) * step[i];
    out[m] = mag * omega.eval(x);
  }
  return out;
}

}  // namespace

double iterated_seq_norm(const SequenceNd& a, const MixedNormSpec& spec) {
  if (a.dim() != spec.dim()) throw Error(ErrorCode::dimension_mismatch, "sequence and norm spec dimensions differ");
  return detail::collapse(weighted_magnitudes(a, spec.omega, spec.step), a.shape(), spec.sigma, spec.p);
}

double iterated_lebesgue_norm(const SignalNd& f, const MixedNormSpec& spec) {
  const GridSpec& grid = f.grid();
  if (grid.dim() != spec.dim()) throw Error(ErrorCode::dimension_mismatch, "signal and norm spec dimensions differ");
  const std::vector<double> unit(spec.dim(), 1.0);
  if (spec.step != unit && !std::equal(spec.step.begin(), spec.step.end(), grid.step().begin())) {
    throw Error(ErrorCode::invalid_argument, "Lebesgue norm spec step must match the grid steps");
  }
  spec.omega.check_on_grid(grid);
  std::vector<double> factor(spec.dim());
  for (std::size_t k = 0; k < spec.dim(); ++k) {
    const double p = spec.p[k];
    factor[k] = std::isinf(p) ? 1.0 : std::pow(grid.step(spec.sigma[k]), 1.0 / p);
  }
  const SequenceNd a = SequenceNd::from_signal(f);
  return detail::collapse(weighted_magnitudes(a, spec.omega, grid.step()), a.shape(), spec.sigma, spec.p, factor);
}

double wiener_norm(const SignalNd& f, const Weight& omega, double q, const ExponentVector& p, const Permutation& sigma,
                   std::span<const std::size_t> block) {
  const GridSpec& grid = f.grid();
  const std::size_t d = grid.dim();
  if (p.size() != d || omega.dim() != d || block.size() != d) {
    throw Error(ErrorCode::dimension_mismatch, "Wiener norm parameters disagree with the grid dimension");
  }
  if (std::isnan(q) || !(q > 0.0)) throw Error(ErrorCode::invalid_argument, "local exponent q must lie in (0, inf]");
  validate_permutation(sigma, d);
  std::vector<std::size_t> blocks(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (block[i] == 0 || grid.n(i) % block[i] != 0) {
      throw Error(ErrorCode::divisibility, "Wiener block size must divide the grid size");
    }
    blocks[i] = grid.n(i) / block[i];
  }
  omega.check_on_grid(grid);

  std::size_t nblocks = 1;
  for (std::size_t b : blocks) nblocks *= b;
  // local norms: accumulate max and then the scaled power sum per block
  std::vector<double> local_max(nblocks, 0.0);
  std::vector<std::size_t> owner(grid.size());
  MultiIndex idx(d);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    grid.unflat(m, idx);
    std::size_t b = 0;
    for (std::size_t i = 0; i < d; ++i) b = b * blocks[i] + static_cast<std::size_t>(idx[i]) / block[i];
    owner[m] = b;
    local_max[b] = std::max(local_max[b], std::abs(f[m]));
  }
  std::vector<double> local(local_max);
  if (!std::isinf(q)) {
    std::vector<double> sums(nblocks, 0.0);
    for (std::size_t m = 0; m < grid.size(); ++m) {
      const double top = local_max[owner[m]];
      if (top > 0.0) sums[owner[m]] += std::pow(std::abs(f[m]) / top, q);
    }
    const double volume = std::pow(grid.cell_volume(), 1.0 / q);
    for (std::size_t b = 0; b < nblocks; ++b) local[b] = local_max[b] * std::pow(sums[b], 1.0 / q) * volume;
  }
  std::vector<double> corner(d);
  for (std::size_t b = 0; b < nblocks; ++b) {
    std::size_t rest = b;
    for (std::size_t i = d; i-- > 0;) {
      idx[i] = static_cast<std::int64_t>((rest % blocks[i]) * block[i]);
      rest /= blocks[i];
    }
    grid.position(grid.flat(idx), corner);
    if (local[b] != 0.0) local[b] *= omega.eval(corner);
  }
  return detail::collapse(std::move(local), blocks, sigma, p);
}

double norm_embedding_ratio(const SequenceNd& a, const MixedNormSpec& spec1, const MixedNormSpec& spec2) {
  if (spec1.sigma != spec2.sigma || spec1.step != spec2.step) {
    throw Error(ErrorCode::invalid_argument, "embedding ratio needs matching sigma and lattice");
  }
  const double num = iterated_seq_norm(a, spec2);
  const double den = iterated_seq_norm(a, spec1);
  if (den == 0.0) {
    if (num == 0.0) return 1.0;
    throw Error(ErrorCode::invalid_argument, "embedding ratio with zero denominator and nonzero numerator");
  }
  return num / den;
}

}  // namespace tfmod
