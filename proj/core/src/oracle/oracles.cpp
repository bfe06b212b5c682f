#include "tfmod/oracle/oracles.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "tfmod/error.hpp"

namespace tfmod::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<MultiIndex> all_indices(const GridSpec& grid) {
  std::vector<MultiIndex> out(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) out[m] = grid.unflat(m);
  return out;
}

double phase(const GridSpec& grid, const MultiIndex& y, const MultiIndex& k) {
  double s = 0.0;
  for (std::size_t i = 0; i < grid.dim(); ++i) {
    const auto n = static_cast<std::int64_t>(grid.n(i));
    s += static_cast<double>((y[i] * k[i]) % n) / static_cast<double>(n);
  }
  return kTwoPi * s;
}

std::size_t shifted(const GridSpec& grid, const MultiIndex& y, const MultiIndex& x) {
  MultiIndex z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[i] - x[i];
  return grid.flat(z);
}

double pow_sum(std::span<const double> v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(x, p);
  return std::pow(s, 1.0 / p);
}

// Collapses the leading axis of a row-major array.
std::vector<double> collapse_leading(const std::vector<double>& v, std::size_t lead, double p, double factor) {
  const std::size_t rest = v.size() / lead;
  std::vector<double> out(rest);
  std::vector<double> line(lead);
  for (std::size_t r = 0; r < rest; ++r) {
    for (std::size_t i = 0; i < lead; ++i) line[i] = v[i * rest + r];
    out[r] = factor * pow_sum(line, p);
  }
  return out;
}

double brute(const std::vector<double>& b, std::span<const std::size_t> shape, const MixedNormSpec& spec,
             std::span<const double> h) {
  const std::size_t d = shape.size();
  // permuted[k] is data axis sigma[k]
  std::vector<std::size_t> pshape(d);
  for (std::size_t k = 0; k < d; ++k) pshape[k] = shape[spec.sigma[k]];
  std::vector<double> perm(b.size());
  std::vector<std::size_t> idx(d);
  for (std::size_t m = 0; m < b.size(); ++m) {
    std::size_t rest = m;
    for (std::size_t i = d; i-- > 0;) {
      idx[i] = rest % shape[i];
      rest /= shape[i];
    }
    std::size_t q = 0;
    for (std::size_t k = 0; k < d; ++k) q = q * pshape[k] + idx[spec.sigma[k]];
    perm[q] = b[m];
  }
  for (std::size_t k = 0; k < d; ++k) {
    const double p = spec.p[k];
    const double factor = h.empty() || std::isinf(p) ? 1.0 : std::pow(h[spec.sigma[k]], 1.0 / p);
    perm = collapse_leading(perm, pshape[k], p, factor);
  }
  return perm.at(0);
}

}  // namespace

SignalNd naive_dft(const SignalNd& f, bool inverse) {
  const GridSpec& grid = f.grid();
  const auto idx = all_indices(grid);
  const double sign = inverse ? 1.0 : -1.0;
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid.size()));
  std::vector<cplx> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    cplx s{};
    for (std::size_t y = 0; y < grid.size(); ++y) s += f[y] * std::polar(1.0, sign * phase(grid, idx[y], idx[k]));
    out[k] = s * scale;
  }
  return SignalNd(grid, std::move(out));
}

double iterated_norm(const SequenceNd& a, const MixedNormSpec& spec) {
  if (spec.dim() != a.dim()) throw Error(ErrorCode::dimension_mismatch, "oracle: spec and sequence dimensions differ");
  std::vector<double> b(a.size());
  MultiIndex c(a.dim());
  std::vector<double> z(a.dim());
  for (std::size_t m = 0; m < a.size(); ++m) {
    a.coordinate(m, c);
    for (std::size_t i = 0; i < a.dim(); ++i) z[i] = static_cast<double>(c[i]) * spec.step[i];
    b[m] = std::abs(a[m]) * spec.omega.eval(z);
  }
  return brute(b, a.shape(), spec, {});
}

double iterated_lebesgue_norm(const SignalNd& f, const MixedNormSpec& spec) {
  const GridSpec& grid = f.grid();
  if (spec.dim() != grid.dim()) throw Error(ErrorCode::dimension_mismatch, "oracle: spec and grid dimensions differ");
  std::vector<double> b(grid.size());
  std::vector<double> z(grid.dim());
  for (std::size_t m = 0; m < grid.size(); ++m) {
    grid.position(m, z);
    b[m] = std::abs(f[m]) * spec.omega.eval(z);
  }
  return brute(b, grid.n(), spec, grid.step());
}

PhaseSpaceSignal naive_stft(const SignalNd& f, const SignalNd& phi) {
  const GridSpec& grid = f.grid();
  const auto idx = all_indices(grid);
  const std::size_t m = grid.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<cplx> out(m * m);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t xi = 0; xi < m; ++xi) {
      cplx s{};
      for (std::size_t y = 0; y < m; ++y) {
        s += f[y] * std::conj(phi[shifted(grid, idx[y], idx[x])]) * std::polar(1.0, -phase(grid, idx[y], idx[xi]));
      }
      out[x * m + xi] = s * scale;
    }
  }
  return PhaseSpaceSignal(grid, std::move(out));
}

std::vector<cplx> dense_frame_operator(const GaborSystem& sys, WindowRole anal, WindowRole synth) {
  auto pick = [&](WindowRole r) -> const SignalNd& {
    if (r == WindowRole::window) return sys.window();
    if (!sys.dual()) throw Error(ErrorCode::invalid_argument, "oracle: system has no dual window");
    return *sys.dual();
  };
  const SignalNd& h = pick(anal);
  const SignalNd& g = pick(synth);
  const GridSpec& grid = sys.grid();
  const auto idx = all_indices(grid);
  const std::size_t m = grid.size();
  const std::size_t d = grid.dim();
  const LatticeSpec& lat = sys.lattice();
  const GridSpec time_grid(lat.time_shape(grid));
  const GridSpec freq_grid(lat.freq_shape(grid));
  std::vector<cplx> s(m * m);
  std::vector<cplx> pg(m), ph(m);
  MultiIndex x(d), xi(d);
  for (std::size_t j = 0; j < time_grid.size(); ++j) {
    const MultiIndex jj = time_grid.unflat(j);
    for (std::size_t i = 0; i < d; ++i) x[i] = jj[i] * static_cast<std::int64_t>(lat.a[i]);
    for (std::size_t k = 0; k < freq_grid.size(); ++k) {
      const MultiIndex kk = freq_grid.unflat(k);
      for (std::size_t i = 0; i < d; ++i) xi[i] = kk[i] * static_cast<std::int64_t>(lat.b[i]);
      for (std::size_t y = 0; y < m; ++y) {
        const cplx e = std::polar(1.0, phase(grid, idx[y], xi));
        const std::size_t src = shifted(grid, idx[y], x);
        pg[y] = e * g[src];
        ph[y] = e * h[src];
      }
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) s[r * m + c] += pg[r] * std::conj(ph[c]);
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (cplx& z : s) z *= scale;
  return s;
}

FrameBounds dense_frame_bounds(const GaborSystem& sys) {
  const auto s = dense_frame_operator(sys);
  const auto m = static_cast<Eigen::Index>(sys.grid().size());
  Eigen::MatrixXcd mat(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) mat(r, c) = s[static_cast<std::size_t>(r * m + c)];
  }
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(mat, Eigen::EigenvaluesOnly).eigenvalues();
  return FrameBounds{ev.minCoeff(), ev.maxCoeff()};
}

SignalNd semidiscrete_conv(const SequenceNd& a, const SignalNd& f, std::span<const std::size_t> theta) {
  const GridSpec& grid = f.grid();
  const std::size_t d = grid.dim();
  std::vector<cplx> up(grid.size());
  MultiIndex c(d);
  for (std::size_t m = 0; m < a.size(); ++m) {
    a.coordinate(m, c);
    for (std::size_t i = 0; i < d; ++i) c[i] *= static_cast<std::int64_t>(theta[i]);
    up[grid.flat(c)] += a[m];
  }
  const auto idx = all_indices(grid);
  std::vector<cplx> out(grid.size());
  for (std::size_t x = 0; x < grid.size(); ++x) {
    cplx s{};
    for (std::size_t y = 0; y < grid.size(); ++y) s += up[y] * f[shifted(grid, idx[x], idx[y])];
    out[x] = s;
  }
  return SignalNd(grid, std::move(out));
}

SignalNd grid_conv(const SignalNd& f1, const SignalNd& f2) {
  const GridSpec& grid = f1.grid();
  const auto idx = all_indices(grid);
  std::vector<cplx> out(grid.size());
  for (std::size_t x = 0; x < grid.size(); ++x) {
    cplx s{};
    for (std::size_t y = 0; y < grid.size(); ++y) s += f1[y] * f2[shifted(grid, idx[x], idx[y])];
    out[x] = s * grid.cell_volume();
  }
  return SignalNd(grid, std::move(out));
}

}  // namespace tfmod::oracle
