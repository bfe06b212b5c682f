#include "tfmod/gabor.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <tuple>

#include "fft_internal.hpp"
#include "tfmod/error.hpp"

namespace tfmod {

namespace {

std::vector<std::size_t> divide(const GridSpec& grid, const std::vector<std::size_t>& step, const char* what) {
  if (step.size() != grid.dim()) throw Error(ErrorCode::dimension_mismatch, std::string(what) + " needs one entry per axis");
  std::vector<std::size_t> out(grid.dim());
  for (std::size_t i = 0; i < grid.dim(); ++i) {
    if (step[i] == 0 || grid.n(i) % step[i] != 0) {
      throw Error(ErrorCode::divisibility, std::string(what) + " must divide the grid size on every axis");
    }
    out[i] = grid.n(i) / step[i];
  }
  return out;
}

std::size_t product(const std::vector<std::size_t>& v) {
  std::size_t p = 1;
  for (std::size_t x : v) p *= x;
  return p;
}

void unflat_box(std::size_t flat, std::span<const std::size_t> shape, std::span<std::int64_t> out) {
  for (std::size_t i = shape.size(); i-- > 0;) {
    out[i] = static_cast<std::int64_t>(flat % shape[i]);
    flat /= shape[i];
  }
}

const SignalNd& pick(const GaborSystem& sys, WindowRole role) {
  if (role == WindowRole::window) return sys.window();
  if (!sys.dual()) throw Error(ErrorCode::invalid_argument, "Gabor system has no dual window");
  return *sys.dual();
}

// Flat grid offsets of the lattice time points a j, in coefficient order.
std::vector<std::size_t> time_offsets(const GridSpec& grid, const LatticeSpec& lat) {
  const auto shape = lat.time_shape(grid);
  std::vector<std::size_t> out(product(shape));
  MultiIndex j(grid.dim());
  for (std::size_t m = 0; m < out.size(); ++m) {
    unflat_box(m, shape, j);
    for (std::size_t i = 0; i < j.size(); ++i) j[i] *= static_cast<std::int64_t>(lat.a[i]);
    out[m] = grid.flat(j);
  }
  return out;
}

std::vector<std::size_t> freq_offsets(const GridSpec& grid, const LatticeSpec& lat) {
  const auto shape = lat.freq_shape(grid);
  std::vector<std::size_t> out(product(shape));
  MultiIndex k(grid.dim());
  for (std::size_t m = 0; m < out.size(); ++m) {
    unflat_box(m, shape, k);
    for (std::size_t i = 0; i < k.size(); ++i) k[i] *= static_cast<std::int64_t>(lat.b[i]);
    out[m] = grid.flat(k);
  }
  return out;
}

// Offsets of y - x for every y, for a fixed shift x.
void shifted_offsets(const GridSpec& grid, std::size_t x_flat, std::vector<std::size_t>& out) {
  const std::size_t d = grid.dim();
  MultiIndex x(d), y(d);
  grid.unflat(x_flat, x);
  out.resize(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) {
    grid.unflat(m, y);
    for (std::size_t i = 0; i < d; ++i) y[i] -= x[i];
    out[m] = grid.flat(y);
  }
}

void require_grid(const SignalNd& f, const GridSpec& grid) {
  if (!(f.grid() == grid)) throw Error(ErrorCode::dimension_mismatch, "signal and Gabor system live on different grids");
}

double relative_error(const SignalNd& approx, const SignalNd& exact) {
  const double n = exact.norm2();
  const double e = distance(approx, exact);
  return n == 0.0 ? e : e / n;
}

}  // namespace

void LatticeSpec::validate(const GridSpec& grid) const {
  divide(grid, a, "time step a");
  divide(grid, b, "frequency step b");
}

double LatticeSpec::redundancy(const GridSpec& grid) const {
  validate(grid);
  double r = 1.0;
  for (std::size_t i = 0; i < grid.dim(); ++i) {
    r *= static_cast<double>(grid.n(i)) / static_cast<double>(a[i] * b[i]);
  }
  return r;
}

std::vector<std::size_t> LatticeSpec::time_shape(const GridSpec& grid) const { return divide(grid, a, "time step a"); }
std::vector<std::size_t> LatticeSpec::freq_shape(const GridSpec& grid) const { return divide(grid, b, "frequency step b"); }

GaborSystem::GaborSystem(SignalNd window, LatticeSpec lattice, std::optional<SignalNd> dual)
    : window_(std::move(window)), lattice_(std::move(lattice)), dual_(std::move(dual)) {
  if (window_.is_zero()) throw Error(ErrorCode::invalid_argument, "Gabor window must not vanish identically");
  lattice_.validate(window_.grid());
  if (dual_ && !(dual_->grid() == window_.grid())) {
    throw Error(ErrorCode::dimension_mismatch, "dual window lives on a different grid");
  }
}

GaborSystem GaborSystem::with_dual(SignalNd dual) const {
  GaborSystem out(window_, lattice_, std::move(dual));
  out.bounds_ = bounds_;
  return out;
}

GaborSystem GaborSystem::with_frame_bounds(FrameBounds bounds) const {
  if (!(bounds.lower > 0.0) || !(bounds.lower <= bounds.upper) || !std::isfinite(bounds.upper)) {
    throw Error(ErrorCode::not_a_frame, "frame bounds need 0 < A <= B < inf");
  }
  GaborSystem out(*this);
  out.bounds_ = bounds;
  return out;
}

GaborCoeffs::GaborCoeffs(GridSpec grid, LatticeSpec lattice, std::vector<cplx> data)
    : grid_(std::move(grid)), lattice_(std::move(lattice)), data_(std::move(data)) {
  time_count_ = product(lattice_.time_shape(grid_));
  freq_count_ = product(lattice_.freq_shape(grid_));
  if (data_.size() != time_count_ * freq_count_) {
    throw Error(ErrorCode::dimension_mismatch, "coefficient count differs from the lattice size");
  }
  for (const cplx& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(ErrorCode::non_finite, "non-finite coefficient");
  }
}

std::vector<std::size_t> GaborCoeffs::shape() const {
  auto s = lattice_.time_shape(grid_);
  const auto f = lattice_.freq_shape(grid_);
  s.insert(s.end(), f.begin(), f.end());
  return s;
}

PhaseSpaceSignal stft(const SignalNd& f, const SignalNd& phi) {
  const GridSpec& grid = f.grid();
  require_grid(phi, grid);
  const std::size_t m = grid.size();
  std::vector<cplx> out(m * m);
  std::vector<std::size_t> shift;
  for (std::size_t x = 0; x < m; ++x) {
    shifted_offsets(grid, x, shift);
    std::span<cplx> row(out.data() + x * m, m);
    for (std::size_t y = 0; y < m; ++y) row[y] = f[y] * std::conj(phi[shift[y]]);
    detail::unitary_dft_inplace(row, grid.n(), detail::FftDirection::forward);
  }
  return PhaseSpaceSignal(grid, std::move(out));
}

GaborCoeffs analysis(const SignalNd& f, const GaborSystem& sys, WindowRole role) {
  const GridSpec& grid = sys.grid();
  require_grid(f, grid);
  const SignalNd& phi = pick(sys, role);
  const auto times = time_offsets(grid, sys.lattice());
  const auto freqs = freq_offsets(grid, sys.lattice());
  const std::size_t m = grid.size();
  std::vector<cplx> row(m);
  std::vector<cplx> out(times.size() * freqs.size());
  std::vector<std::size_t> shift;
  for (std::size_t j = 0; j < times.size(); ++j) {
    shifted_offsets(grid, times[j], shift);
    for (std::size_t y = 0; y < m; ++y) row[y] = f[y] * std::conj(phi[shift[y]]);
    detail::unitary_dft_inplace(row, grid.n(), detail::FftDirection::forward);
    for (std::size_t k = 0; k < freqs.size(); ++k) out[j * freqs.size() + k] = row[freqs[k]];
  }
  return GaborCoeffs(grid, sys.lattice(), std::move(out));
}

SignalNd synthesis(const GaborCoeffs& c, const GaborSystem& sys, WindowRole role) {
  const GridSpec& grid = sys.grid();
  if (!(c.grid() == grid) || !(c.lattice() == sys.lattice())) {
    throw Error(ErrorCode::dimension_mismatch, "coefficients belong to a different lattice");
  }
  const SignalNd& psi = pick(sys, role);
  const auto times = time_offsets(grid, sys.lattice());
  const auto freqs = freq_offsets(grid, sys.lattice());
  const std::size_t m = grid.size();
  // sum_k c(j,k) exp(2 pi i <y, b k / N>) = sqrt(M) * idft(upsampled c(j, .))(y)
  const double scale = kSynthesisScale * std::sqrt(static_cast<double>(m));
  std::vector<cplx> out(m);
  std::vector<cplx> row(m);
  std::vector<std::size_t> shift;
  for (std::size_t j = 0; j < times.size(); ++j) {
    std::fill(row.begin(), row.end(), cplx{});
    bool any = false;
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      row[freqs[k]] = c(j, k);
      any = any || c(j, k) != cplx{};
    }
    if (!any) continue;
    detail::unitary_dft_inplace(row, grid.n(), detail::FftDirection::inverse);
    shifted_offsets(grid, times[j], shift);
    for (std::size_t y = 0; y < m; ++y) out[y] += scale * row[y] * psi[shift[y]];
  }
  return SignalNd(grid, std::move(out));
}

SignalNd mixed_frame_operator_apply(const SignalNd& f, const GaborSystem& sys, WindowRole anal, WindowRole synth) {
  return synthesis(analysis(f, sys, anal), sys, synth);
}

SignalNd frame_operator_apply(const SignalNd& f, const GaborSystem& sys) {
  return mixed_frame_operator_apply(f, sys, WindowRole::window, WindowRole::window);
}

namespace {

// Walnut representation: S(y, y') = M^{-1/2} prod(N/b) [y - y' in (N/b) Z]
// sum_j phi(y - a j) conj(phi(y' - a j)). Returns, for each residue class
// y mod N/b, the dense Hermitian block over its prod(b) members.
struct WalnutBlocks {
  std::vector<std::vector<std::size_t>> members;
  std::vector<Eigen::MatrixXcd> blocks;
};

WalnutBlocks walnut_blocks(const GaborSystem& sys) {
  const GridSpec& grid = sys.grid();
  const std::size_t d = grid.dim();
  const auto period = sys.lattice().freq_shape(grid);  // N/b
  const std::vector<std::size_t>& b = sys.lattice().b;
  const std::size_t classes = product(period);
  const std::size_t size = product(b);
  const auto times = time_offsets(grid, sys.lattice());
  const double scale = static_cast<double>(classes) / std::sqrt(static_cast<double>(grid.size()));

  WalnutBlocks out;
  out.members.resize(classes);
  out.blocks.resize(classes);
  MultiIndex r(d), l(d), y(d), t(d);
  for (std::size_t c = 0; c < classes; ++c) {
    unflat_box(c, period, r);
    auto& mem = out.members[c];
    mem.resize(size);
    for (std::size_t q = 0; q < size; ++q) {
      unflat_box(q, b, l);
      for (std::size_t i = 0; i < d; ++i) y[i] = r[i] + l[i] * static_cast<std::int64_t>(period[i]);
      mem[q] = grid.flat(y);
    }
    // column of window samples phi(y - a j) for each member and time point
    Eigen::MatrixXcd g(size, times.size());
    for (std::size_t jt = 0; jt < times.size(); ++jt) {
      grid.unflat(times[jt], t);
      for (std::size_t q = 0; q < size; ++q) {
        grid.unflat(mem[q], y);
        for (std::size_t i = 0; i < d; ++i) y[i] -= t[i];
        g(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(jt)) = sys.window()[grid.flat(y)];
      }
    }
    out.blocks[c] = scale * (g * g.adjoint());
  }
  return out;
}

// Extreme eigenvalues of a Hermitian PSD matrix by power iteration.
std::pair<double, double> power_extremes(const Eigen::MatrixXcd& a, std::size_t max_iter) {
  const auto n = a.rows();
  auto dominant = [&](const Eigen::MatrixXcd& op) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n).normalized();
    double lambda = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
      Eigen::VectorXcd w = op * v;
      const double next = std::real(v.dot(w));
      const double norm = w.norm();
      if (norm == 0.0) return 0.0;
      const double residual = (w - next * v).norm();
      v = w / norm;
      if (residual <= 1e-12 * std::max(1.0, std::abs(next))) return next;
      lambda = next;
    }
    throw Error(ErrorCode::no_convergence,
                "power iteration for frame bounds did not converge (last estimate " + std::to_string(lambda) + ")");
  };
  const double top = dominant(a);
  const Eigen::MatrixXcd shifted = top * Eigen::MatrixXcd::Identity(n, n) - a;
  const double gap = dominant(shifted);
  return {top - gap, top};
}

}  // namespace

FrameBounds frame_bounds(const GaborSystem& sys, std::size_t max_iter) {
  const WalnutBlocks w = walnut_blocks(sys);
  FrameBounds fb{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& block : w.blocks) {
    double lo = 0.0;
    double hi = 0.0;
    if (block.rows() <= 4096) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block, Eigen::EigenvaluesOnly);
      if (eig.info() != Eigen::Success) throw Error(ErrorCode::no_convergence, "Hermitian eigensolver failed");
      lo = eig.eigenvalues().minCoeff();
      hi = eig.eigenvalues().maxCoeff();
    } else {
      std::tie(lo, hi) = power_extremes(block, max_iter);
    }
    fb.lower = std::min(fb.lower, lo);
    fb.upper = std::max(fb.upper, hi);
  }
  return fb;
}

DualResult canonical_dual(const GaborSystem& sys, double tol, std::size_t max_iter) {
  const FrameBounds fb = sys.frame_bounds() ? *sys.frame_bounds() : frame_bounds(sys);
  if (!(fb.lower > kFrameTolerance)) {
    throw Error(ErrorCode::not_a_frame, "lower frame bound " + std::to_string(fb.lower) + " is not above the frame tolerance");
  }
  const SignalNd& phi = sys.window();
  const GridSpec& grid = phi.grid();
  const std::size_t m = grid.size();
  const double target = tol * phi.norm2();

  std::vector<cplx> x(m), r(phi.data().begin(), phi.data().end()), p(r);
  auto dot = [](const std::vector<cplx>& u, const std::vector<cplx>& v) {
    cplx s{};
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
  };
  double rr = std::real(dot(r, r));
  std::size_t it = 0;
  for (; it < max_iter && std::sqrt(rr) > target; ++it) {
    const SignalNd sp = frame_operator_apply(SignalNd(grid, p), sys);
    const std::vector<cplx> ap(sp.data().begin(), sp.data().end());
    const double alpha = rr / std::real(dot(p, ap));
    for (std::size_t i = 0; i < m; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    // recompute the true residual now and then so rounding cannot stall the loop
    if ((it + 1) % 50 == 0) {
      const SignalNd sx = frame_operator_apply(SignalNd(grid, x), sys);
      for (std::size_t i = 0; i < m; ++i) r[i] = phi[i] - sx[i];
    }
    const double rr_next = std::real(dot(r, r));
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < m; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_next;
  }
  SignalNd dual(grid, std::move(x));
  const double residual = distance(frame_operator_apply(dual, sys), phi) / phi.norm2();
  if (residual > tol) {
    throw Error(ErrorCode::no_convergence, "conjugate gradients stopped at relative residual " + std::to_string(residual) +
                                               " after " + std::to_string(it) + " iterations");
  }
  return DualResult{std::move(dual), it, residual};
}

GaborSystem with_canonical_dual(const GaborSystem& sys, double tol, std::size_t max_iter) {
  return sys.with_dual(canonical_dual(sys, tol, max_iter).dual);
}

SignalNd canonical_tight(const GaborSystem& sys) {
  const WalnutBlocks w = walnut_blocks(sys);
  std::vector<cplx> out(sys.grid().size());
  for (std::size_t c = 0; c < w.blocks.size(); ++c) {
    const auto& block = w.blocks[c];
    if (block.rows() > 4096) throw Error(ErrorCode::invalid_argument, "canonical_tight needs Walnut blocks of at most 4096 points");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block);
    if (eig.info() != Eigen::Success) throw Error(ErrorCode::no_convergence, "Hermitian eigensolver failed");
    if (!(eig.eigenvalues().minCoeff() > kFrameTolerance)) throw Error(ErrorCode::not_a_frame, "Gabor system is not a frame");
    const Eigen::VectorXd inv_sqrt = eig.eigenvalues().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXcd root = eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().adjoint();
    const auto& mem = w.members[c];
    Eigen::VectorXcd v(static_cast<Eigen::Index>(mem.size()));
    for (std::size_t q = 0; q < mem.size(); ++q) v(static_cast<Eigen::Index>(q)) = sys.window()[mem[q]];
    const Eigen::VectorXcd res = root * v;
    for (std::size_t q = 0; q < mem.size(); ++q) out[mem[q]] = res(static_cast<Eigen::Index>(q));
  }
  return SignalNd(sys.grid(), std::move(out));
}

Reconstruction reconstruct(const SignalNd& f, const GaborSystem& sys) {
  if (!sys.dual()) throw Error(ErrorCode::invalid_argument, "reconstruction needs a dual window");
  require_grid(f, sys.grid());
  SignalNd a = mixed_frame_operator_apply(f, sys, WindowRole::window, WindowRole::dual);
  SignalNd b = mixed_frame_operator_apply(f, sys, WindowRole::dual, WindowRole::window);
  const double residual = std::max(relative_error(a, f), relative_error(b, f));
  return Reconstruction{std::move(a), std::move(b), residual};
}

namespace detail {

double covariance_residual_unchecked(const GaborSystem& sys, const SignalNd& f, std::span<const std::int64_t> j,
                                     std::span<const std::int64_t> k) {
  require_grid(f, sys.grid());
  const double n = f.norm2();
  if (n == 0.0) return 0.0;
  const SignalNd lhs = frame_operator_apply(tf_shift(f, j, k), sys);
  const SignalNd rhs = tf_shift(frame_operator_apply(f, sys), j, k);
  return distance(lhs, rhs) / n;
}

}  // namespace detail

double frame_op_covariance_residual(const GaborSystem& sys, const SignalNd& f, std::span<const std::int64_t> j,
                                    std::span<const std::int64_t> k) {
  const GridSpec& grid = sys.grid();
  if (j.size() != grid.dim() || k.size() != grid.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "lattice point has the wrong dimension");
  }
  for (std::size_t i = 0; i < grid.dim(); ++i) {
    if (wrap_index(j[i], grid.n(i)) % static_cast<std::int64_t>(sys.lattice().a[i]) != 0 ||
        wrap_index(k[i], grid.n(i)) % static_cast<std::int64_t>(sys.lattice().b[i]) != 0) {
      throw Error(ErrorCode::hypothesis_violation, "covariance holds only for shifts on the lattice");
    }
  }
  return detail::covariance_residual_unchecked(sys, f, j, k);
}

}  // namespace tfmod
