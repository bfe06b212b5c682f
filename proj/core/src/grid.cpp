#include "tfmod/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tfmod/error.hpp"

namespace tfmod {

GridSpec::GridSpec(std::vector<std::size_t> n, std::vector<double> step)
    : n_(std::move(n)), step_(std::move(step)) {
  if (n_.empty() || n_.size() > kMaxDim) {
    throw Error(ErrorCode::invalid_argument, "grid dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  }
  if (step_.empty()) step_.assign(n_.size(), 1.0);
  if (step_.size() != n_.size()) {
    throw Error(ErrorCode::dimension_mismatch, "grid step vector length differs from dimension");
  }
  for (std::size_t i = 0; i < n_.size(); ++i) {
    if (n_[i] < 2) throw Error(ErrorCode::invalid_argument, "every grid axis needs at least 2 points");
    if (!(step_[i] > 0.0) || !std::isfinite(step_[i])) {
      throw Error(ErrorCode::invalid_argument, "grid steps must be positive and finite");
    }
    if (size_ > kMaxCells / n_[i]) throw Error(ErrorCode::invalid_argument, "grid exceeds 2^28 cells");
    size_ *= n_[i];
  }
}

double GridSpec::cell_volume() const noexcept {
  double v = 1.0;
  for (double h : step_) v *= h;
  return v;
}

std::size_t GridSpec::flat(std::span<const std::int64_t> idx) const {
  if (idx.size() != n_.size()) throw Error(ErrorCode::dimension_mismatch, "multi-index length differs from grid dimension");
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n_.size(); ++i) {
    offset = offset * n_[i] + static_cast<std::size_t>(wrap_index(idx[i], n_[i]));
  }
  return offset;
}

void GridSpec::unflat(std::size_t offset, std::span<std::int64_t> out) const {
  for (std::size_t i = n_.size(); i-- > 0;) {
    out[i] = static_cast<std::int64_t>(offset % n_[i]);
    offset /= n_[i];
  }
}

MultiIndex GridSpec::unflat(std::size_t offset) const {
  MultiIndex idx(n_.size());
  unflat(offset, idx);
  return idx;
}

void GridSpec::position(std::size_t offset, std::span<double> out) const {
  for (std::size_t i = n_.size(); i-- > 0;) {
    const auto j = static_cast<std::int64_t>(offset % n_[i]);
    offset /= n_[i];
    out[i] = static_cast<double>(symmetric_rep(j, n_[i])) * step_[i];
  }
}

std::int64_t wrap_index(std::int64_t i, std::size_t n) noexcept {
  const auto m = static_cast<std::int64_t>(n);
  const std::int64_t r = i % m;
  return r < 0 ? r + m : r;
}

std::int64_t symmetric_rep(std::int64_t i, std::size_t n) noexcept {
  const std::int64_t r = wrap_index(i, n);
  return 2 * r >= static_cast<std::int64_t>(n) ? r - static_cast<std::int64_t>(n) : r;
}

GridSpec phase_space(const GridSpec& base) {
  std::vector<std::size_t> n(base.n().begin(), base.n().end());
  std::vector<double> step(base.step().begin(), base.step().end());
  for (std::size_t i = 0; i < base.dim(); ++i) {
    n.push_back(base.n(i));
    step.push_back(1.0 / base.step(i));
  }
  return GridSpec(std::move(n), std::move(step));
}

SignalNd::SignalNd(GridSpec grid, std::vector<cplx> data) : grid_(std::move(grid)), data_(std::move(data)) {
  if (data_.size() != grid_.size()) {
    std::ostringstream msg;
    msg << "signal has " << data_.size() << " entries, grid needs " << grid_.size();
    throw Error(ErrorCode::dimension_mismatch, msg.str());
  }
  for (const cplx& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::non_finite, "signal contains NaN or Inf");
    }
  }
}

SignalNd SignalNd::zeros(GridSpec grid) {
  const std::size_t n = grid.size();
  return SignalNd(std::move(grid), std::vector<cplx>(n));
}

double SignalNd::norm2() const noexcept {
  // scaled accumulation keeps tiny and huge signals accurate
  double scale = 0.0;
  for (const cplx& z : data_) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const cplx& z : data_) sum += std::norm(z / scale);
  return scale * std::sqrt(sum);
}

bool SignalNd::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) { return z == cplx{}; });
}

SignalNd SignalNd::scaled(cplx lambda) const {
  std::vector<cplx> out(data_);
  for (cplx& z : out) z *= lambda;
  return SignalNd(grid_, std::move(out));
}

SignalNd SignalNd::conj() const {
  std::vector<cplx> out(data_);
  for (cplx& z : out) z = std::conj(z);
  return SignalNd(grid_, std::move(out));
}

namespace {

void require_same_grid(const SignalNd& f, const SignalNd& g) {
  if (!(f.grid() == g.grid())) throw Error(ErrorCode::dimension_mismatch, "signals live on different grids");
}

}  // namespace

cplx inner(const SignalNd& f, const SignalNd& g) {
  require_same_grid(f, g);
  cplx sum{};
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * std::conj(g[i]);
  return sum;
}

SignalNd operator+(const SignalNd& f, const SignalNd& g) {
  require_same_grid(f, g);
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] + g[i];
  return SignalNd(f.grid(), std::move(out));
}

SignalNd operator-(const SignalNd& f, const SignalNd& g) {
  require_same_grid(f, g);
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] - g[i];
  return SignalNd(f.grid(), std::move(out));
}

double distance(const SignalNd& f, const SignalNd& g) { return (f - g).norm2(); }

SignalNd translate(const SignalNd& f, std::span<const std::int64_t> shift) {
  const GridSpec& grid = f.grid();
  if (shift.size() != grid.dim()) throw Error(ErrorCode::dimension_mismatch, "shift length differs from grid dimension");
  std::vector<cplx> out(f.size());
  MultiIndex idx(grid.dim());
  for (std::size_t m = 0; m < f.size(); ++m) {
    grid.unflat(m, idx);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] -= shift[i];
    out[m] = f[grid.flat(idx)];
  }
  return SignalNd(grid, std::move(out));
}

SignalNd modulate(const SignalNd& f, std::span<const std::int64_t> k) {
  const GridSpec& grid = f.grid();
  if (k.size() != grid.dim()) throw Error(ErrorCode::dimension_mismatch, "frequency length differs from grid dimension");
  // exact phase: reduce m*k mod N before converting to an angle
  std::vector<std::vector<cplx>> phase(grid.dim());
  for (std::size_t i = 0; i < grid.dim(); ++i) {
    const std::size_t n = grid.n(i);
    const std::int64_t ki = wrap_index(k[i], n);
    phase[i].resize(n);
    for (std::size_t m = 0; m < n; ++m) {
      const auto r = static_cast<double>(wrap_index(static_cast<std::int64_t>(m) * ki, n));
      phase[i][m] = std::polar(1.0, 2.0 * std::numbers::pi * r / static_cast<double>(n));
    }
  }
  std::vector<cplx> out(f.size());
  MultiIndex idx(grid.dim());
  for (std::size_t m = 0; m < f.size(); ++m) {
    grid.unflat(m, idx);
    cplx factor{1.0, 0.0};
    for (std::size_t i = 0; i < idx.size(); ++i) factor *= phase[i][static_cast<std::size_t>(idx[i])];
    out[m] = factor * f[m];
  }
  return SignalNd(grid, std::move(out));
}

SignalNd tf_shift(const SignalNd& f, std::span<const std::int64_t> j, std::span<const std::int64_t> k) {
  return modulate(translate(f, j), k);
}

PhaseSpaceSignal::PhaseSpaceSignal(GridSpec base, std::vector<cplx> data)
    : base_(std::move(base)), values_(phase_space(base_), std::move(data)) {}

}  // namespace tfmod
