#include "tfmod/convolution.hpp"

#include <cmath>
#include <sstream>

#include "tfmod/detail/parallel.hpp"
#include "tfmod/detail/rng.hpp"
#include "tfmod/error.hpp"

namespace tfmod {

namespace {

std::size_t product(std::span<const std::size_t> v) {
  std::size_t p = 1;
  for (std::size_t x : v) p *= x;
  return p;
}

std::vector<std::size_t> coarse_shape(const GridSpec& grid, std::span<const std::size_t> theta, const char* what) {
  if (theta.size() != grid.dim()) throw Error(ErrorCode::dimension_mismatch, std::string(what) + " needs one entry per axis");
  std::vector<std::size_t> out(grid.dim());
  for (std::size_t i = 0; i < grid.dim(); ++i) {
    if (theta[i] == 0 || grid.n(i) % theta[i] != 0) {
      throw Error(ErrorCode::divisibility, std::string(what) + " must divide the grid size on every axis");
    }
    out[i] = grid.n(i) / theta[i];
  }
  return out;
}

// Folds a onto Z_{N/theta}: coefficients with the same residue act as one.
SequenceNd fold(const SequenceNd& a, std::span<const std::size_t> shape) {
  if (a.mode() == SequenceNd::IndexMode::torus &&
      std::equal(a.shape().begin(), a.shape().end(), shape.begin(), shape.end())) {
    return a;
  }
  std::vector<cplx> data(product(shape));
  MultiIndex j(a.dim());
  for (std::size_t m = 0; m < a.size(); ++m) {
    a.coordinate(m, j);
    std::size_t flat = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) flat = flat * shape[i] + static_cast<std::size_t>(wrap_index(j[i], shape[i]));
    data[flat] += a[m];
  }
  return SequenceNd(std::vector<std::size_t>(shape.begin(), shape.end()), std::move(data), {},
                    SequenceNd::IndexMode::torus);
}

SequenceNd random_sequence(std::vector<std::size_t> shape, detail::Rng& rng) {
  std::vector<cplx> data(product(shape));
  for (cplx& z : data) {
    const double re = rng.normal();
    z = cplx(re, rng.normal());
  }
  return SequenceNd(std::move(shape), std::move(data), {}, SequenceNd::IndexMode::torus);
}

SignalNd random_signal(const GridSpec& grid, detail::Rng& rng) {
  std::vector<cplx> data(grid.size());
  for (cplx& z : data) {
    const double re = rng.normal();
    z = cplx(re, rng.normal());
  }
  return SignalNd(grid, std::move(data));
}

void finish(ConvEstimateReport& r) {
  r.constant_bound = 1.0;
  for (const auto& [name, value] : r.rhs_factors) r.constant_bound *= value;
  if (r.constant_bound == 0.0) {
    r.ratio = r.lhs == 0.0 ? 0.0 : kInf;
  } else {
    r.ratio = r.lhs / r.constant_bound;
  }
  r.passed = std::isfinite(r.ratio) && r.ratio <= 1.0 + r.tolerance;
}

std::string exponent_text(const ExponentVector& p) {
  std::ostringstream s;
  s << '(';
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) s << ',';
    if (std::isinf(p[k])) {
      s << "inf";
    } else {
      s << p[k];
    }
  }
  s << ')';
  return s.str();
}

template <class T>
std::string list_text(std::span<const T> v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t k = 0; k < v.size(); ++k) s << (k ? "," : "") << v[k];
  s << ')';
  return s.str();
}

// Physical positions of block corners: corner b sits at grid index b * block.
std::vector<std::vector<double>> block_corners(const GridSpec& grid, std::span<const std::size_t> blocks,
                                               std::span<const std::size_t> block) {
  const std::size_t d = grid.dim();
  std::vector<std::vector<double>> out(product(blocks), std::vector<double>(d));
  MultiIndex idx(d);
  for (std::size_t b = 0; b < out.size(); ++b) {
    std::size_t rest = b;
    for (std::size_t i = d; i-- > 0;) {
      idx[i] = static_cast<std::int64_t>((rest % blocks[i]) * block[i]);
      rest /= blocks[i];
    }
    grid.position(grid.flat(idx), out[b]);
  }
  return out;
}

std::size_t block_flat(std::span<const std::int64_t> idx, std::span<const std::size_t> blocks) {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    flat = flat * blocks[i] + static_cast<std::size_t>(wrap_index(idx[i], blocks[i]));
  }
  return flat;
}

void unflat_box(std::size_t flat, std::span<const std::size_t> shape, std::span<std::int64_t> out) {
  for (std::size_t i = shape.size(); i-- > 0;) {
    out[i] = static_cast<std::int64_t>(flat % shape[i]);
    flat /= shape[i];
  }
}

}  // namespace

SequenceNd conv(const SequenceNd& a, const SequenceNd& b, ConvMode mode) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::dimension_mismatch, "convolution of sequences of different dimension");
  const std::size_t d = a.dim();
  MultiIndex ia(d), ib(d), out_idx(d);
  if (mode == ConvMode::cyclic) {
    if (!std::equal(a.shape().begin(), a.shape().end(), b.shape().begin(), b.shape().end())) {
      throw Error(ErrorCode::dimension_mismatch, "cyclic convolution needs equal shapes");
    }
    std::vector<cplx> out(a.size());
    for (std::size_t m = 0; m < a.size(); ++m) {
      if (a[m] == cplx{}) continue;
      a.unflat(m, ia);
      for (std::size_t n = 0; n < b.size(); ++n) {
        b.unflat(n, ib);
        for (std::size_t i = 0; i < d; ++i) out_idx[i] = ia[i] + ib[i];
        out[block_flat(out_idx, a.shape())] += a[m] * b[n];
      }
    }
    return a.with_data(std::move(out));
  }
  std::vector<std::size_t> shape(d);
  MultiIndex origin(d);
  for (std::size_t i = 0; i < d; ++i) {
    shape[i] = a.shape()[i] + b.shape()[i] - 1;
    origin[i] = a.origin()[i] + b.origin()[i];
  }
  std::vector<cplx> out(product(shape));
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m] == cplx{}) continue;
    a.unflat(m, ia);
    for (std::size_t n = 0; n < b.size(); ++n) {
      b.unflat(n, ib);
      std::size_t flat = 0;
      for (std::size_t i = 0; i < d; ++i) flat = flat * shape[i] + static_cast<std::size_t>(ia[i] + ib[i]);
      out[flat] += a[m] * b[n];
    }
  }
  return SequenceNd(std::move(shape), std::move(out), std::move(origin), SequenceNd::IndexMode::box);
}

SignalNd semidiscrete_conv(const SequenceNd& a, const SignalNd& f, std::span<const std::size_t> theta) {
  const GridSpec& grid = f.grid();
  if (a.dim() != grid.dim()) throw Error(ErrorCode::dimension_mismatch, "coefficients and signal dimensions differ");
  coarse_shape(grid, theta, "lattice step theta");
  const std::size_t d = grid.dim();
  std::vector<cplx> out(grid.size());
  MultiIndex j(d), x(d);
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m] == cplx{}) continue;
    a.coordinate(m, j);
    for (std::size_t i = 0; i < d; ++i) j[i] *= static_cast<std::int64_t>(theta[i]);
    for (std::size_t n = 0; n < grid.size(); ++n) {
      grid.unflat(n, x);
      for (std::size_t i = 0; i < d; ++i) x[i] -= j[i];
      out[n] += a[m] * f[grid.flat(x)];
    }
  }
  return SignalNd(grid, std::move(out));
}

SignalNd dilation_pullback(const SignalNd& f, std::span<const std::size_t> theta) {
  const GridSpec& grid = f.grid();
  const auto shape = coarse_shape(grid, theta, "dilation theta");
  for (std::size_t s : shape) {
    if (s < 2) throw Error(ErrorCode::invalid_argument, "dilated grid needs at least 2 points per axis");
  }
  const GridSpec small(shape, std::vector<double>(grid.step().begin(), grid.step().end()));
  std::vector<cplx> out(small.size());
  MultiIndex j(grid.dim());
  for (std::size_t m = 0; m < out.size(); ++m) {
    small.unflat(m, j);
    for (std::size_t i = 0; i < j.size(); ++i) j[i] *= static_cast<std::int64_t>(theta[i]);
    out[m] = f[grid.flat(j)];
  }
  return SignalNd(small, std::move(out));
}

SignalNd grid_conv(const SignalNd& f1, const SignalNd& f2) {
  if (!(f1.grid() == f2.grid())) throw Error(ErrorCode::dimension_mismatch, "convolution of signals on different grids");
  const SignalNd a = dft(f1);
  const SignalNd b = dft(f2);
  const double scale = std::sqrt(static_cast<double>(f1.size())) * f1.grid().cell_volume();
  std::vector<cplx> prod(a.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = scale * a[i] * b[i];
  return idft(SignalNd(f1.grid(), std::move(prod)));
}

ExponentVector maximal_young_exponents(const ExponentVector& p) {
  std::vector<double> r(p.size());
  double running = 1.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    running = std::min(running, p[k]);
    r[k] = running;
  }
  return ExponentVector(std::move(r));
}

ConvEstimateReport check_semidiscrete_estimate(const SemidiscreteCase& c, const SequenceNd& a, const SignalNd& f) {
  if (!(f.grid() == c.grid)) throw Error(ErrorCode::dimension_mismatch, "signal does not live on the case grid");
  const std::size_t d = c.grid.dim();
  const auto shape = coarse_shape(c.grid, c.theta, "lattice step theta");
  const SequenceNd folded = fold(a, shape);
  const ModerationCertificate cert = lattice_moderation_constant(c.omega, c.v, c.grid, c.theta);

  std::vector<double> lattice_step(d);
  for (std::size_t i = 0; i < d; ++i) lattice_step[i] = static_cast<double>(c.theta[i]) * c.grid.step(i);
  const MixedNormSpec a_spec(maximal_young_exponents(c.p), c.sigma, c.v, lattice_step);
  const MixedNormSpec f_spec(c.p, c.sigma, c.omega, std::vector<double>(c.grid.step().begin(), c.grid.step().end()));

  ConvEstimateReport r;
  r.estimate = "semidiscrete";
  r.tolerance = c.tolerance;
  r.lhs = iterated_lebesgue_norm(semidiscrete_conv(folded, f, c.theta), f_spec);
  r.rhs_factors = {{"moderation_constant", cert.c_estimate},
                   {"coefficient_norm", iterated_seq_norm(folded, a_spec)},
                   {"signal_norm", iterated_lebesgue_norm(f, f_spec)}};
  finish(r);
  std::ostringstream s;
  s << "N=" << list_text(c.grid.n()) << " theta=" << list_text<std::size_t>(c.theta) << " p=" << exponent_text(c.p)
    << " sigma=" << list_text<std::size_t>(c.sigma);
  r.descriptor = s.str();
  return r;
}

ConvEstimateReport check_semidiscrete_estimate(const SemidiscreteCase& c, std::uint64_t seed) {
  detail::Rng rng(seed);
  const auto shape = coarse_shape(c.grid, c.theta, "lattice step theta");
  const SequenceNd a = random_sequence(shape, rng);
  const SignalNd f = random_signal(c.grid, rng);
  ConvEstimateReport r = check_semidiscrete_estimate(c, a, f);
  r.seed = seed;
  return r;
}

bool admissible_young_chain(const ExponentVector& p0, const ExponentVector& p1, const ExponentVector& p2,
                            std::span<const std::size_t> sigma) {
  const std::size_t d = p0.size();
  if (p1.size() != d || p2.size() != d) throw Error(ErrorCode::dimension_mismatch, "exponent triples of different length");
  validate_permutation(sigma, d);
  double power = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double x0 = p0[k], x1 = p1[k], x2 = p2[k];
    if (x0 == x1 && x1 == x2 && x0 <= power) {
      power = x0;
      continue;
    }
    if (x0 < power || x1 < power || x2 < power) return false;
    const double lhs = 1.0 + power / x0;
    const double rhs = power / x1 + power / x2;
    if (std::abs(lhs - rhs) > 1e-12) return false;
  }
  return true;
}

namespace {

void require_young(const WienerConvCase& c) {
  validate_permutation(c.sigma, c.grid.dim());
  if (!admissible_young_chain(c.p[0], c.p[1], c.p[2], c.sigma)) {
    throw Error(ErrorCode::hypothesis_violation, "exponents violate the discrete Young chain");
  }
}

}  // namespace

ConvEstimateReport check_wiener_conv_estimate(const WienerConvCase& c, const SignalNd& f1, const SignalNd& f2) {
  if (!(f1.grid() == c.grid) || !(f2.grid() == c.grid)) {
    throw Error(ErrorCode::dimension_mismatch, "signals do not live on the case grid");
  }
  require_young(c);
  const auto [q0, q1, q2] = c.q;
  if (!(q0 >= 1.0) || !(q1 >= 1.0) || !(q2 >= 1.0) || std::abs(1.0 + 1.0 / q0 - 1.0 / q1 - 1.0 / q2) > 1e-12) {
    throw Error(ErrorCode::hypothesis_violation, "local exponents need q >= 1 and 1 + 1/q0 = 1/q1 + 1/q2");
  }
  const std::size_t d = c.grid.dim();
  const auto blocks = coarse_shape(c.grid, c.block, "Wiener block");
  const auto corners = block_corners(c.grid, blocks, c.block);
  for (const Weight& w : c.omega) w.check_on_grid(c.grid);

  // C_w = max omega0(n) / (omega1(j) omega2(n - j - e)) over blocks n, j and e in {0,1}^d
  std::vector<double> l0(corners.size()), l1(corners.size()), l2(corners.size());
  for (std::size_t b = 0; b < corners.size(); ++b) {
    l0[b] = c.omega[0].log_eval(corners[b]);
    l1[b] = c.omega[1].log_eval(corners[b]);
    l2[b] = c.omega[2].log_eval(corners[b]);
  }
  double worst = -kInf;
  MultiIndex n(d), j(d), k(d);
  for (std::size_t bn = 0; bn < corners.size(); ++bn) {
    unflat_box(bn, blocks, n);
    for (std::size_t bj = 0; bj < corners.size(); ++bj) {
      unflat_box(bj, blocks, j);
      for (std::size_t e = 0; e < (std::size_t{1} << d); ++e) {
        for (std::size_t i = 0; i < d; ++i) k[i] = n[i] - j[i] - static_cast<std::int64_t>((e >> i) & 1U);
        worst = std::max(worst, l0[bn] - l1[bj] - l2[block_flat(k, blocks)]);
      }
    }
  }
  const double r0 = c.p[0].r();

  ConvEstimateReport r;
  r.estimate = "wiener-conv-1";
  r.tolerance = c.tolerance;
  r.lhs = wiener_norm(grid_conv(f1, f2), c.omega[0], q0, c.p[0], c.sigma, c.block);
  r.rhs_factors = {{"weight_constant", std::exp(worst)},
                   {"overlap_constant", std::pow(2.0, static_cast<double>(d) / r0)},
                   {"f1_norm", wiener_norm(f1, c.omega[1], q1, c.p[1], c.sigma, c.block)},
                   {"f2_norm", wiener_norm(f2, c.omega[2], q2, c.p[2], c.sigma, c.block)}};
  finish(r);
  std::ostringstream s;
  s << "N=" << list_text(c.grid.n()) << " block=" << list_text<std::size_t>(c.block) << " q=(" << q0 << ',' << q1
    << ',' << q2 << ") p0=" << exponent_text(c.p[0]) << " p1=" << exponent_text(c.p[1])
    << " p2=" << exponent_text(c.p[2]);
  r.descriptor = s.str();
  return r;
}

ConvEstimateReport check_wiener_conv_estimate(const WienerConvCase& c, const SequenceNd& a, const SignalNd& f) {
  if (!(f.grid() == c.grid)) throw Error(ErrorCode::dimension_mismatch, "signal does not live on the case grid");
  require_young(c);
  const std::size_t d = c.grid.dim();
  const auto blocks = coarse_shape(c.grid, c.block, "Wiener block");
  const auto shape = coarse_shape(c.grid, c.theta, "lattice step theta");
  std::vector<std::size_t> stride(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (c.theta[i] % c.block[i] != 0) {
      throw Error(ErrorCode::hypothesis_violation, "theta must be a multiple of the block size");
    }
    stride[i] = c.theta[i] / c.block[i];
  }
  const auto corners = block_corners(c.grid, blocks, c.block);
  for (const Weight& w : c.omega) w.check_on_grid(c.grid);
  const SequenceNd folded = fold(a, shape);

  // C_w = max omega0(n) / (omega1(theta j) omega2(n - theta j / block))
  std::vector<double> lattice_log_w1(folded.size());
  std::vector<double> pos(d);
  MultiIndex j(d), n(d), k(d);
  for (std::size_t m = 0; m < folded.size(); ++m) {
    folded.coordinate(m, j);
    for (std::size_t i = 0; i < d; ++i) j[i] *= static_cast<std::int64_t>(c.theta[i]);
    c.grid.position(c.grid.flat(j), pos);
    lattice_log_w1[m] = c.omega[1].log_eval(pos);
  }
  double worst = -kInf;
  for (std::size_t bn = 0; bn < corners.size(); ++bn) {
    unflat_box(bn, blocks, n);
    const double l0 = c.omega[0].log_eval(corners[bn]);
    for (std::size_t m = 0; m < folded.size(); ++m) {
      folded.unflat(m, j);
      for (std::size_t i = 0; i < d; ++i) k[i] = n[i] - j[i] * static_cast<std::int64_t>(stride[i]);
      worst = std::max(worst, l0 - lattice_log_w1[m] - c.omega[2].log_eval(corners[block_flat(k, blocks)]));
    }
  }
  std::vector<double> lattice_step(d);
  for (std::size_t i = 0; i < d; ++i) lattice_step[i] = static_cast<double>(c.theta[i]) * c.grid.step(i);

  ConvEstimateReport r;
  r.estimate = "wiener-conv-2";
  r.tolerance = c.tolerance;
  r.lhs = wiener_norm(semidiscrete_conv(folded, f, c.theta), c.omega[0], kInf, c.p[0], c.sigma, c.block);
  r.rhs_factors = {{"weight_constant", std::exp(worst)},
                   {"coefficient_norm", iterated_seq_norm(folded, MixedNormSpec(c.p[1], c.sigma, c.omega[1], lattice_step))},
                   {"signal_norm", wiener_norm(f, c.omega[2], kInf, c.p[2], c.sigma, c.block)}};
  finish(r);
  std::ostringstream s;
  s << "N=" << list_text(c.grid.n()) << " block=" << list_text<std::size_t>(c.block)
    << " theta=" << list_text<std::size_t>(c.theta) << " p0=" << exponent_text(c.p[0])
    << " p1=" << exponent_text(c.p[1]) << " p2=" << exponent_text(c.p[2]);
  r.descriptor = s.str();
  return r;
}

ConvEstimateReport check_wiener_conv_estimate(const WienerConvCase& c, int part, std::uint64_t seed) {
  detail::Rng rng(seed);
  ConvEstimateReport r;
  if (part == 1) {
    const SignalNd f1 = random_signal(c.grid, rng);
    const SignalNd f2 = random_signal(c.grid, rng);
    r = check_wiener_conv_estimate(c, f1, f2);
  } else if (part == 2) {
    const SequenceNd a = random_sequence(coarse_shape(c.grid, c.theta, "lattice step theta"), rng);
    const SignalNd f = random_signal(c.grid, rng);
    r = check_wiener_conv_estimate(c, a, f);
  } else {
    throw Error(ErrorCode::invalid_argument, "Wiener convolution estimate has parts 1 and 2");
  }
  r.seed = seed;
  return r;
}

ConvEstimateReport check_dilation_estimate(const DilationCase& c, const SignalNd& f) {
  if (!(f.grid() == c.grid)) throw Error(ErrorCode::dimension_mismatch, "signal does not live on the case grid");
  const std::size_t d = c.grid.dim();
  if (c.p.size() != d) throw Error(ErrorCode::dimension_mismatch, "exponent count differs from grid dimension");
  validate_permutation(c.sigma, d);
  const auto small = coarse_shape(c.grid, c.theta, "dilation theta");
  for (std::size_t i = 0; i < d; ++i) {
    if (c.block.size() != d || c.block[i] == 0 || small[i] % c.block[i] != 0) {
      throw Error(ErrorCode::divisibility, "Wiener block must divide N / theta on every axis");
    }
  }
  c.omega.check_on_grid(c.grid);

  // block K of the pullback covers the theta^d blocks theta K + e of f
  const auto f_blocks = coarse_shape(c.grid, c.block, "Wiener block");
  std::vector<std::size_t> g_blocks(d);
  for (std::size_t i = 0; i < d; ++i) g_blocks[i] = small[i] / c.block[i];
  const auto corners = block_corners(c.grid, f_blocks, c.block);
  std::vector<double> log_w(corners.size());
  for (std::size_t b = 0; b < corners.size(); ++b) log_w[b] = c.omega.log_eval(corners[b]);
  double worst = -kInf;
  MultiIndex kk(d), e(d), jj(d);
  const std::vector<std::size_t> theta_box(c.theta.begin(), c.theta.end());
  for (std::size_t bk = 0; bk < product(g_blocks); ++bk) {
    unflat_box(bk, g_blocks, kk);
    for (std::size_t i = 0; i < d; ++i) kk[i] *= static_cast<std::int64_t>(c.theta[i]);
    const double top = log_w[block_flat(kk, f_blocks)];
    for (std::size_t be = 0; be < product(theta_box); ++be) {
      unflat_box(be, theta_box, e);
      for (std::size_t i = 0; i < d; ++i) jj[i] = kk[i] + e[i];
      worst = std::max(worst, top - log_w[block_flat(jj, f_blocks)]);
    }
  }

  double big_r = 1.0;
  double displayed = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    const auto t = static_cast<double>(c.theta[k]);
    big_r = std::max(big_r, t);
    const double pk = c.p[c.sigma[k]];
    displayed *= (std::isinf(c.q) ? 1.0 : std::pow(t, -1.0 / c.q)) *
                 (std::isinf(pk) ? 1.0 : std::pow(std::floor(1.0 + 1.0 / t), 1.0 / pk));
  }
  const double inv_q = std::isinf(c.q) ? 0.0 : 1.0 / c.q;
  const double geometric = std::pow(big_r, static_cast<double>(d) * (2.0 * inv_q + 1.0 / c.p.r()));

  std::vector<double> theta_real(c.theta.begin(), c.theta.end());
  ConvEstimateReport r;
  r.estimate = "dilation";
  r.tolerance = c.tolerance;
  r.lhs = wiener_norm(dilation_pullback(f, c.theta), c.omega.dilated(theta_real), c.q, c.p, c.sigma, c.block);
  r.rhs_factors = {{"weight_constant", std::exp(worst)},
                   {"geometric_constant", geometric},
                   {"dilation_factor", displayed},
                   {"signal_norm", wiener_norm(f, c.omega, c.q, c.p, c.sigma, c.block)}};
  finish(r);
  std::ostringstream s;
  s << "N=" << list_text(c.grid.n()) << " theta=" << list_text<std::size_t>(c.theta)
    << " block=" << list_text<std::size_t>(c.block) << " q=" << c.q << " p=" << exponent_text(c.p);
  r.descriptor = s.str();
  return r;
}

ConvEstimateReport check_dilation_estimate(const DilationCase& c, std::uint64_t seed) {
  detail::Rng rng(seed);
  ConvEstimateReport r = check_dilation_estimate(c, random_signal(c.grid, rng));
  r.seed = seed;
  return r;
}

SweepSummary summarize(std::string estimate, std::vector<ConvEstimateReport> reports, double spread_bound) {
  SweepSummary s;
  s.estimate = std::move(estimate);
  s.instances = reports.size();
  s.spread_bound = spread_bound;
  s.ratio_min = kInf;
  s.ratio_max = 0.0;
  bool finite = true;
  for (const auto& r : reports) {
    if (!r.passed) ++s.failures;
    if (!std::isfinite(r.ratio)) finite = false;
    s.ratio_min = std::min(s.ratio_min, r.ratio);
    s.ratio_max = std::max(s.ratio_max, r.ratio);
  }
  if (reports.empty()) s.ratio_min = 0.0;
  s.spread = s.ratio_min > 0.0 ? s.ratio_max / s.ratio_min : (s.ratio_max == 0.0 ? 1.0 : kInf);
  s.passed = finite && s.failures == 0 && s.spread <= spread_bound;
  s.reports = std::move(reports);
  return s;
}

namespace {

double pick_exponent(detail::Rng& rng) { return rng.pick({0.5, 1.0, 2.0, kInf}); }

Permutation random_permutation(std::size_t d, detail::Rng& rng) {
  Permutation sigma = identity_permutation(d);
  for (std::size_t i = d; i > 1; --i) std::swap(sigma[i - 1], sigma[rng.below(i)]);
  return sigma;
}

template <class Make>
std::vector<ConvEstimateReport> run_sweep(std::uint64_t seed, std::size_t instances, std::size_t threads, Make make) {
  std::vector<std::optional<ConvEstimateReport>> slots(instances);
  detail::parallel_for(instances, threads, [&](std::size_t i) { slots[i] = make(detail::mix_seed(seed, i)); });
  std::vector<ConvEstimateReport> out;
  out.reserve(instances);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

SweepSummary semidiscrete_sweep(std::uint64_t seed, std::size_t instances, std::size_t threads) {
  auto reports = run_sweep(seed, instances, threads, [](std::uint64_t s) {
    detail::Rng rng(s);
    // mostly one-dimensional as in the reference sweep, every fourth instance mixes two axes
    const std::size_t d = rng.below(4) == 0 ? 2 : 1;
    std::vector<std::size_t> n(d), theta(d);
    std::vector<double> p(d);
    for (std::size_t i = 0; i < d; ++i) {
      n[i] = d == 1 ? rng.pick<std::size_t>({16, 32}) : 16;
      theta[i] = rng.pick<std::size_t>({1, 2, 4});
      p[i] = pick_exponent(rng);
    }
    const Weight w = Weight::polynomial(d, 1.0);
    SemidiscreteCase c{GridSpec(n), theta, ExponentVector(p), random_permutation(d, rng), w, w};
    return check_semidiscrete_estimate(c, rng.below(std::uint64_t{1} << 62));
  });
  return summarize("semidiscrete", std::move(reports), kInf);
}

SweepSummary dilation_sweep(std::uint64_t seed, std::size_t instances, std::size_t threads) {
  auto reports = run_sweep(seed, instances, threads, [](std::uint64_t s) {
    detail::Rng rng(s);
    const std::size_t theta = rng.pick<std::size_t>({1, 2, 4});
    const std::size_t block = rng.pick<std::size_t>({1, 2});
    const double q = rng.pick({1.0, 2.0, kInf});
    const double p = pick_exponent(rng);
    const std::size_t family = rng.below(3);
    const Weight w = family == 0 ? Weight::constant(1) : family == 1 ? Weight::polynomial(1, 1.0)
                                                                     : Weight::exponential(1, 0.1);
    DilationCase c{GridSpec({32}), {theta}, {block}, q, ExponentVector({p}), {0}, w};
    return check_dilation_estimate(c, rng.below(std::uint64_t{1} << 62));
  });
  return summarize("dilation", std::move(reports), kInf);
}

SweepSummary wiener_conv_sweep(std::uint64_t seed, std::size_t instances, std::size_t threads) {
  auto reports = run_sweep(seed, instances, threads, [](std::uint64_t s) {
    detail::Rng rng(s);
    const int part = rng.below(2) == 0 ? 1 : 2;
    // (p0, p1, p2) triples that satisfy the one-axis Young chain
    static const std::array<std::array<double, 3>, 6> triples{{{1.0, 1.0, 1.0},
                                                               {2.0, 1.0, 2.0},
                                                               {kInf, 2.0, 2.0},
                                                               {0.5, 0.5, 0.5},
                                                               {kInf, 1.0, kInf},
                                                               {2.0, 2.0, 1.0}}};
    static const std::array<std::array<double, 3>, 4> local{{{1.0, 1.0, 1.0},
                                                             {2.0, 1.0, 2.0},
                                                             {kInf, 2.0, 2.0},
                                                             {kInf, 1.0, kInf}}};
    const auto& t = triples[rng.below(triples.size())];
    const std::size_t block = rng.pick<std::size_t>({1, 2, 4});
    const double s_w = rng.pick({0.0, 0.5, 1.0});
    const Weight w = Weight::polynomial(1, s_w);
    WienerConvCase c{GridSpec({32}),
                     {block},
                     {kInf, kInf, kInf},
                     {ExponentVector({t[0]}), ExponentVector({t[1]}), ExponentVector({t[2]})},
                     {0},
                     {w, w, w},
                     {}};
    if (part == 1) {
      const auto& l = local[rng.below(local.size())];
      c.q = {l[0], l[1], l[2]};
    } else {
      c.theta = {block * rng.pick<std::size_t>({1, 2})};
    }
    return check_wiener_conv_estimate(c, part, rng.below(std::uint64_t{1} << 62));
  });
  return summarize("wiener-conv", std::move(reports), 1e6);
}

}  // namespace tfmod
