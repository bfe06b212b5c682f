#include "tfmod/modspace.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "tfmod/detail/rng.hpp"
#include "tfmod/error.hpp"

namespace tfmod {

namespace {

double safe_ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 1.0 : kInf;
  return num / den;
}

void require_phase_spec(const MixedNormSpec& spec, const GridSpec& grid) {
  if (spec.dim() != 2 * grid.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "phase-space norm needs 2d exponents for a d-dimensional grid");
  }
}

std::vector<double> phase_steps(const GridSpec& grid) {
  const GridSpec ps = phase_space(grid);
  return {ps.step().begin(), ps.step().end()};
}

}  // namespace

void finalize(EquivalenceReport& report) {
  report.ratio_min = kInf;
  report.ratio_max = 0.0;
  bool finite = true;
  for (double r : report.ratios) {
    if (!std::isfinite(r)) finite = false;
    report.ratio_min = std::min(report.ratio_min, r);
    report.ratio_max = std::max(report.ratio_max, r);
  }
  if (report.ratios.empty()) report.ratio_min = 0.0;
  report.spread = safe_ratio(report.ratio_max, report.ratio_min);
  report.passed = finite && !report.ratios.empty() && report.spread <= report.bound;
}

double modulation_norm(const SignalNd& f, const ModNormSpec& spec) {
  require_phase_spec(spec.norm, f.grid());
  return iterated_lebesgue_norm(stft(f, spec.window).values(), spec.norm);
}

MixedNormSpec amalgam_as_mixed(std::size_t d, double p, double q, const Weight& omega) {
  std::vector<double> exps(2 * d);
  Permutation sigma(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    exps[i] = q;
    exps[d + i] = p;
    sigma[i] = d + i;
    sigma[d + i] = i;
  }
  return MixedNormSpec(ExponentVector(std::move(exps)), std::move(sigma), omega);
}

double amalgam_norm(const SignalNd& f, double p, double q, const Weight& omega, const SignalNd& window) {
  return modulation_norm(f, ModNormSpec{amalgam_as_mixed(f.grid().dim(), p, q, omega), window});
}

double fourier_lebesgue_norm(const SignalNd& f, double q, const Weight& omega, std::span<const double> x_anchor) {
  const GridSpec& grid = f.grid();
  const std::size_t d = grid.dim();
  if (omega.dim() != 2 * d || x_anchor.size() != d) {
    throw Error(ErrorCode::dimension_mismatch, "Fourier-Lebesgue norm needs a phase-space weight and a d-dimensional anchor");
  }
  const ExponentVector exps = ExponentVector::uniform(d, q);
  std::vector<double> freq_step(d);
  for (std::size_t i = 0; i < d; ++i) freq_step[i] = 1.0 / grid.step(i);
  const GridSpec freq_grid(std::vector<std::size_t>(grid.n().begin(), grid.n().end()), freq_step);
  const SignalNd fhat = dft(f);
  std::vector<double> values(grid.size());
  std::vector<double> z(2 * d);
  std::copy(x_anchor.begin(), x_anchor.end(), z.begin());
  std::span<double> xi(z.data() + d, d);
  for (std::size_t m = 0; m < values.size(); ++m) {
    const double mag = std::abs(fhat[m]);
    if (mag == 0.0) continue;
    freq_grid.position(m, xi);
    values[m] = mag * omega.eval(z);
  }
  std::vector<double> factor(d);
  for (std::size_t i = 0; i < d; ++i) factor[i] = std::isinf(q) ? 1.0 : std::pow(freq_step[i], 1.0 / q);
  return detail::collapse(std::move(values), grid.n(), identity_permutation(d), exps, factor);
}

std::vector<SignalNd> random_ensemble(const GridSpec& grid, std::uint64_t seed, std::size_t n) {
  std::vector<SignalNd> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SignalParams params;
    params.seed = detail::mix_seed(seed, i);
    out.push_back(standard_signal(grid, SignalKind::random, params));
  }
  return out;
}

EquivalenceReport window_independence_report(std::uint64_t seed, std::size_t n_signals, const SignalNd& phi1,
                                             const SignalNd& phi2, const MixedNormSpec& spec, double bound) {
  if (phi1.is_zero() || phi2.is_zero()) throw Error(ErrorCode::invalid_argument, "windows must not vanish identically");
  if (!(phi1.grid() == phi2.grid())) throw Error(ErrorCode::dimension_mismatch, "windows live on different grids");
  EquivalenceReport rep;
  rep.name = "window-independence";
  rep.seed = seed;
  rep.bound = bound;
  const ModNormSpec s1{spec, phi1};
  const ModNormSpec s2{spec, phi2};
  for (const SignalNd& f : random_ensemble(phi1.grid(), seed, n_signals)) {
    rep.ratios.push_back(safe_ratio(modulation_norm(f, s1), modulation_norm(f, s2)));
  }
  finalize(rep);
  rep.constants["one_sided_constant"] = rep.ratio_max;
  return rep;
}

EquivalenceReport embedding_report(std::uint64_t seed, std::size_t n_signals, const ModNormSpec& spec1,
                                   const ModNormSpec& spec2, double tol) {
  const GridSpec& grid = spec1.window.grid();
  require_phase_spec(spec1.norm, grid);
  require_phase_spec(spec2.norm, grid);
  if (!(spec1.window.grid() == spec2.window.grid()) || distance(spec1.window, spec2.window) != 0.0) {
    throw Error(ErrorCode::hypothesis_violation, "embedding report needs identical windows");
  }
  if (spec1.norm.sigma != spec2.norm.sigma) throw Error(ErrorCode::hypothesis_violation, "embedding report needs equal sigma");
  const std::size_t dim = spec1.norm.dim();
  for (std::size_t k = 0; k < dim; ++k) {
    if (spec1.norm.p[k] > spec2.norm.p[k]) throw Error(ErrorCode::hypothesis_violation, "embedding needs p1 <= p2");
  }
  const GridSpec ps = phase_space(grid);
  spec1.norm.omega.check_on_grid(ps);
  spec2.norm.omega.check_on_grid(ps);
  double log_c = -kInf;
  std::vector<double> z(dim);
  for (std::size_t m = 0; m < ps.size(); ++m) {
    ps.position(m, z);
    log_c = std::max(log_c, spec2.norm.omega.log_eval(z) - spec1.norm.omega.log_eval(z));
  }
  double step_factor = 1.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double inv1 = std::isinf(spec1.norm.p[k]) ? 0.0 : 1.0 / spec1.norm.p[k];
    const double inv2 = std::isinf(spec2.norm.p[k]) ? 0.0 : 1.0 / spec2.norm.p[k];
    step_factor *= std::pow(ps.step(spec1.norm.sigma[k]), inv2 - inv1);
  }
  const double c = std::exp(log_c) * step_factor;

  EquivalenceReport rep;
  rep.name = "embedding";
  rep.seed = seed;
  rep.bound = kInf;
  for (const SignalNd& f : random_ensemble(grid, seed, n_signals)) {
    rep.ratios.push_back(safe_ratio(modulation_norm(f, spec2), modulation_norm(f, spec1)));
  }
  finalize(rep);
  rep.constants["c"] = c;
  rep.constants["tolerance"] = tol;
  rep.passed = rep.passed && rep.ratio_max <= c * (1.0 + tol);
  return rep;
}

double coefficient_norm(const GaborCoeffs& c, const MixedNormSpec& spec) {
  const GridSpec& grid = c.grid();
  require_phase_spec(spec, grid);
  const std::size_t d = grid.dim();
  std::vector<double> step(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    step[i] = static_cast<double>(c.lattice().a[i]) * grid.step(i);
    step[d + i] = static_cast<double>(c.lattice().b[i]) / grid.step(i);
  }
  const SequenceNd seq(c.shape(), std::vector<cplx>(c.data().begin(), c.data().end()), {},
                       SequenceNd::IndexMode::torus);
  return iterated_seq_norm(seq, MixedNormSpec(spec.p, spec.sigma, spec.omega, step));
}

std::pair<EquivalenceReport, EquivalenceReport> gabor_equivalence_report(std::uint64_t seed, std::size_t n_signals,
                                                                         const GaborSystem& sys,
                                                                         const MixedNormSpec& spec, double bound) {
  if (!sys.dual()) throw Error(ErrorCode::invalid_argument, "Gabor equivalence report needs a dual window");
  require_phase_spec(spec, sys.grid());
  EquivalenceReport with_window;
  with_window.name = "gabor-equivalence-window";
  EquivalenceReport with_dual;
  with_dual.name = "gabor-equivalence-dual";
  for (EquivalenceReport* r : {&with_window, &with_dual}) {
    r->seed = seed;
    r->bound = bound;
    r->constants["redundancy"] = sys.lattice().redundancy(sys.grid());
  }
  const ModNormSpec cont{spec, sys.window()};
  for (const SignalNd& f : random_ensemble(sys.grid(), seed, n_signals)) {
    const double m = modulation_norm(f, cont);
    with_window.ratios.push_back(safe_ratio(m, coefficient_norm(analysis(f, sys, WindowRole::window), spec)));
    with_dual.ratios.push_back(safe_ratio(m, coefficient_norm(analysis(f, sys, WindowRole::dual), spec)));
  }
  finalize(with_window);
  finalize(with_dual);
  return {std::move(with_window), std::move(with_dual)};
}

EquivalenceReport wiener_equivalence_report(std::uint64_t seed, std::size_t n_signals, const SignalNd& phi1,
                                            const SignalNd& phi2, const MixedNormSpec& spec,
                                            std::span<const std::size_t> block, double bound) {
  const GridSpec& grid = phi1.grid();
  require_phase_spec(spec, grid);
  if (!(phi2.grid() == grid)) throw Error(ErrorCode::dimension_mismatch, "windows live on different grids");
  if (block.size() != spec.dim()) throw Error(ErrorCode::dimension_mismatch, "block needs one entry per phase-space axis");
  const auto steps = phase_steps(grid);
  double volume = 1.0;
  for (std::size_t k = 0; k < spec.dim(); ++k) {
    const double p = spec.p[k];
    const std::size_t axis = spec.sigma[k];
    if (!std::isinf(p)) volume *= std::pow(static_cast<double>(block[axis]) * steps[axis], 1.0 / p);
  }
  EquivalenceReport rep;
  rep.name = "wiener-equivalence";
  rep.seed = seed;
  rep.bound = bound;
  const ModNormSpec s1{spec, phi1};
  for (const SignalNd& f : random_ensemble(grid, seed, n_signals)) {
    const double w = wiener_norm(stft(f, phi2).values(), spec.omega, kInf, spec.p, spec.sigma, block) * volume;
    rep.ratios.push_back(safe_ratio(modulation_norm(f, s1), w));
  }
  finalize(rep);
  rep.constants["block_volume_factor"] = volume;
  return rep;
}

std::vector<std::size_t> support_adapted_step(const GridSpec& grid, double support_radius, double window_radius) {
  const std::size_t d = grid.dim();
  std::vector<std::size_t> a(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t n = grid.n(i);
    std::size_t chosen = 0;
    for (std::size_t cand = 1; cand < n && chosen == 0; ++cand) {
      if (n % cand != 0) continue;
      bool clear = true;
      for (std::size_t j = 1; j < n / cand && clear; ++j) {
        const auto rep = static_cast<double>(symmetric_rep(static_cast<std::int64_t>(j * cand), n));
        if (std::abs(rep) <= support_radius + window_radius) clear = false;
      }
      if (clear) chosen = cand;
    }
    if (chosen == 0) {
      throw Error(ErrorCode::hypothesis_violation,
                  "signal support plus window support does not fit in a half period");
    }
    a[i] = chosen;
  }
  return a;
}

EquivalenceReport compact_support_report(std::uint64_t seed, std::size_t n_signals, const CompactSupportCase& c,
                                         double bound) {
  const GridSpec& grid = c.grid;
  const std::size_t d = grid.dim();
  if (c.omega.dim() != 2 * d) throw Error(ErrorCode::dimension_mismatch, "weight must live on phase space");
  if (!(c.support_radius >= 0.0) || !(c.window_radius >= c.support_radius)) {
    throw Error(ErrorCode::hypothesis_violation, "window radius must cover the signal support radius");
  }
  if (c.p_list.empty()) throw Error(ErrorCode::invalid_argument, "p_list must not be empty");
  const auto a = support_adapted_step(grid, c.support_radius, c.window_radius);
  SignalParams wp;
  wp.radius = {c.window_radius};
  const GaborSystem sys(standard_signal(grid, SignalKind::block, wp), LatticeSpec{a, std::vector<std::size_t>(d, 1)});

  std::vector<MixedNormSpec> specs;
  for (double p : c.p_list) {
    std::vector<double> m_exps(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      m_exps[i] = p;
      m_exps[d + i] = c.q;
    }
    specs.emplace_back(ExponentVector(m_exps), identity_permutation(2 * d), c.omega);
    specs.push_back(amalgam_as_mixed(d, p, c.q, c.omega));
  }
  const std::vector<double> origin(d, 0.0);

  EquivalenceReport rep;
  rep.name = "compact-support";
  rep.seed = seed;
  rep.bound = bound;
  for (std::size_t i = 0; i < n_signals; ++i) {
    SignalParams sp;
    sp.seed = detail::mix_seed(seed, i);
    sp.radius = {c.support_radius};
    const SignalNd f = standard_signal(grid, SignalKind::random, sp);
    const GaborCoeffs coeffs = analysis(f, sys);
    double lo = fourier_lebesgue_norm(f, c.q, c.omega, origin);
    double hi = lo;
    for (const MixedNormSpec& s : specs) {
      const double v = coefficient_norm(coeffs, s);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    rep.ratios.push_back(safe_ratio(hi, lo));
  }
  finalize(rep);
  for (std::size_t i = 0; i < d; ++i) rep.constants["time_step_" + std::to_string(i)] = static_cast<double>(a[i]);
  rep.info["norms"] = "M^{p,q} and W^{p,q} for every p in p_list, and FL^q";
  return rep;
}

EquivalenceReport local_bound_report(std::uint64_t seed, std::size_t n_signals, const LocalBoundCase& c) {
  const GridSpec& grid = c.grid;
  const std::size_t d = grid.dim();
  for (std::size_t i = 0; i < d; ++i) {
    if (!(c.radius < static_cast<double>(grid.n(i)) / 2.0)) {
      throw Error(ErrorCode::invalid_argument, "ball radius must stay below half the grid period");
    }
  }
  if (std::isnan(c.p) || !(c.p > 0.0)) throw Error(ErrorCode::invalid_argument, "p must lie in (0, inf]");
  SignalParams gp;
  gp.normalize = true;
  const SignalNd phi = standard_signal(grid, SignalKind::gaussian, gp);
  const GridSpec ps = phase_space(grid);

  // integer offsets of the Euclidean ball
  std::vector<MultiIndex> ball;
  const auto reach = static_cast<std::int64_t>(std::floor(c.radius));
  const std::size_t side = static_cast<std::size_t>(2 * reach + 1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < 2 * d; ++i) total *= side;
  MultiIndex off(2 * d);
  for (std::size_t m = 0; m < total; ++m) {
    std::size_t rest = m;
    double r2 = 0.0;
    for (std::size_t i = 2 * d; i-- > 0;) {
      off[i] = static_cast<std::int64_t>(rest % side) - reach;
      rest /= side;
      r2 += static_cast<double>(off[i] * off[i]);
    }
    if (r2 <= c.radius * c.radius) ball.push_back(off);
  }
  const double cell = std::pow(ps.cell_volume(), std::isinf(c.p) ? 0.0 : 1.0 / c.p);

  auto ratio_at = [&](const PhaseSpaceSignal& v, std::size_t center) {
    MultiIndex z0 = ps.unflat(center);
    MultiIndex z(2 * d);
    std::vector<double> values;
    values.reserve(ball.size());
    for (const MultiIndex& o : ball) {
      for (std::size_t i = 0; i < 2 * d; ++i) z[i] = z0[i] + o[i];
      values.push_back(std::abs(v.data()[ps.flat(z)]));
    }
    const std::vector<std::size_t> shape{values.size()};
    const double local = cell * detail::collapse(std::move(values), shape, identity_permutation(1),
                                                  ExponentVector({c.p}));
    return safe_ratio(std::abs(v.data()[center]), local);
  };

  EquivalenceReport rep;
  rep.name = "local-bound";
  rep.seed = seed;
  rep.bound = kInf;
  detail::Rng rng(detail::mix_seed(seed, 0xC3));
  double center_max = 0.0;
  double off_max = 0.0;
  std::vector<double> off_ratios;
  for (const SignalNd& f : random_ensemble(grid, seed, n_signals)) {
    const PhaseSpaceSignal v = stft(f, phi);
    const double r0 = ratio_at(v, 0);
    rep.ratios.push_back(r0);
    center_max = std::max(center_max, r0);
    for (std::size_t k = 0; k < c.n_centers; ++k) {
      const double r = ratio_at(v, static_cast<std::size_t>(rng.below(ps.size())));
      off_ratios.push_back(r);
      off_max = std::max(off_max, r);
    }
  }
  rep.ratios.insert(rep.ratios.end(), off_ratios.begin(), off_ratios.end());
  finalize(rep);
  rep.constants["center_max"] = center_max;
  rep.constants["off_center_max"] = off_max;
  rep.constants["factor"] = c.factor;
  const double rel = safe_ratio(off_max, center_max);
  rep.passed = rep.passed && rel <= c.factor && rel >= 1.0 / c.factor;
  return rep;
}

DecayFit gaussian_decay_fit(const GridSpec& grid) {
  SignalParams gp;
  gp.normalize = true;
  const SignalNd phi = standard_signal(grid, SignalKind::gaussian, gp);
  const PhaseSpaceSignal v = stft(phi, phi);
  const GridSpec ps = phase_space(grid);
  const std::size_t n = ps.dim();
  double top = 0.0;
  for (const cplx& z : v.data()) top = std::max(top, std::abs(z));

  // Central quarter-period box, where wrap-around images are negligible.
  std::vector<std::size_t> keep;
  for (std::size_t m = 0; m < ps.size(); ++m) {
    const MultiIndex idx = ps.unflat(m);
    bool central = true;
    for (std::size_t i = 0; i < n; ++i) {
      central = central && 4 * std::abs(symmetric_rep(idx[i], ps.n(i))) <= static_cast<std::int64_t>(ps.n(i));
    }
    if (central && std::abs(v.data()[m]) >= 1e-8 * top) keep.push_back(m);
  }
  const std::size_t features = 1 + n + n * (n + 1) / 2;
  Eigen::MatrixXd design(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(features));
  Eigen::VectorXd target(static_cast<Eigen::Index>(keep.size()));
  std::vector<double> z(n);
  for (std::size_t row = 0; row < keep.size(); ++row) {
    ps.position(keep[row], z);
    const auto r = static_cast<Eigen::Index>(row);
    Eigen::Index col = 0;
    design(r, col++) = 1.0;
    for (std::size_t i = 0; i < n; ++i) design(r, col++) = z[i];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) design(r, col++) = z[i] * z[j];
    }
    target(r) = std::log(std::abs(v.data()[keep[row]]));
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(target);
  Eigen::MatrixXd hessian(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::Index col = static_cast<Eigen::Index>(1 + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double c = coef(col++);
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      if (i == j) {
        hessian(ii, jj) = 2.0 * c;
      } else {
        hessian(ii, jj) = c;
        hessian(jj, ii) = c;
      }
    }
  }
  const Eigen::VectorXd residual = design * coef - target;
  const double mean = target.mean();
  const double ss_tot = (target.array() - mean).square().sum();
  DecayFit fit;
  fit.points = keep.size();
  fit.r_squared = ss_tot > 0.0 ? 1.0 - residual.squaredNorm() / ss_tot : 1.0;
  fit.max_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hessian).eigenvalues().maxCoeff();
  fit.passed = fit.max_eigenvalue < 0.0 && fit.r_squared >= 0.999;
  return fit;
}

}  // namespace tfmod
