#include "tfmod/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tfmod/error.hpp"

namespace tfmod {

struct Weight::Node {
  Family family;
  std::size_t dim;
  std::vector<double> params;
  std::vector<Weight> children;
};

namespace {

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw Error(ErrorCode::invalid_argument, std::string(what) + " must be finite");
}

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double t : x) s += t * t;
  return s;
}

}  // namespace

Weight Weight::constant(std::size_t dim, double value) {
  if (dim == 0) throw Error(ErrorCode::invalid_argument, "weight dimension must be positive");
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::invalid_argument, "constant weight must be positive and finite");
  }
  return Weight(std::make_shared<const Node>(Node{Family::constant, dim, {value}, {}}));
}

Weight Weight::polynomial(std::size_t dim, double s) {
  if (dim == 0) throw Error(ErrorCode::invalid_argument, "weight dimension must be positive");
  require_finite(s, "polynomial exponent");
  return Weight(std::make_shared<const Node>(Node{Family::polynomial, dim, {s}, {}}));
}

Weight Weight::exponential(std::size_t dim, double r, double s) {
  if (dim == 0) throw Error(ErrorCode::invalid_argument, "weight dimension must be positive");
  require_finite(r, "exponential rate");
  if (!(s >= 1.0) || !std::isfinite(s)) throw Error(ErrorCode::invalid_argument, "exponential weight needs s >= 1");
  return Weight(std::make_shared<const Node>(Node{Family::exponential, dim, {r, s}, {}}));
}

Weight Weight::tilt(std::vector<double> direction) {
  if (direction.empty()) throw Error(ErrorCode::invalid_argument, "weight dimension must be positive");
  for (double u : direction) require_finite(u, "tilt direction");
  const std::size_t dim = direction.size();
  return Weight(std::make_shared<const Node>(Node{Family::tilt, dim, std::move(direction), {}}));
}

Weight Weight::anisotropic(std::vector<Weight> factors) {
  if (factors.empty()) throw Error(ErrorCode::invalid_argument, "anisotropic weight needs at least one factor");
  for (const Weight& w : factors) {
    if (w.dim() != 1) throw Error(ErrorCode::dimension_mismatch, "anisotropic factors must be one-dimensional");
  }
  const std::size_t dim = factors.size();
  return Weight(std::make_shared<const Node>(Node{Family::anisotropic, dim, {}, std::move(factors)}));
}

Weight Weight::reciprocal() const {
  return Weight(std::make_shared<const Node>(Node{Family::reciprocal, dim(), {}, {*this}}));
}

Weight Weight::dilated(std::vector<double> theta) const {
  if (theta.size() != dim()) throw Error(ErrorCode::dimension_mismatch, "dilation needs one factor per axis");
  for (double t : theta) require_finite(t, "dilation factor");
  return Weight(std::make_shared<const Node>(Node{Family::dilation, dim(), std::move(theta), {*this}}));
}

Weight operator*(const Weight& a, const Weight& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::dimension_mismatch, "weight product of different dimensions");
  return Weight(std::make_shared<const Weight::Node>(Weight::Node{Weight::Family::product, a.dim(), {}, {a, b}}));
}

Weight operator+(const Weight& a, const Weight& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::dimension_mismatch, "weight sum of different dimensions");
  return Weight(std::make_shared<const Weight::Node>(Weight::Node{Weight::Family::sum, a.dim(), {}, {a, b}}));
}

std::size_t Weight::dim() const noexcept { return node_->dim; }
Weight::Family Weight::family() const noexcept { return node_->family; }
std::vector<Weight> Weight::children() const { return node_->children; }
std::vector<double> Weight::params() const { return node_->params; }

bool Weight::is_even() const noexcept {
  if (node_->family == Family::tilt) {
    return std::all_of(node_->params.begin(), node_->params.end(), [](double u) { return u == 0.0; });
  }
  return std::all_of(node_->children.begin(), node_->children.end(), [](const Weight& w) { return w.is_even(); });
}

double Weight::eval(std::span<const double> x) const {
  if (x.size() != dim()) throw Error(ErrorCode::dimension_mismatch, "weight evaluated at a point of wrong dimension");
  const Node& n = *node_;
  switch (n.family) {
    case Family::constant: return n.params[0];
    case Family::polynomial: return std::pow(1.0 + squared_norm(x), 0.5 * n.params[0]);
    case Family::exponential: return std::exp(n.params[0] * std::pow(std::sqrt(squared_norm(x)), 1.0 / n.params[1]));
    case Family::tilt: return std::exp(std::inner_product(x.begin(), x.end(), n.params.begin(), 0.0));
    case Family::anisotropic: {
      double v = 1.0;
      for (std::size_t i = 0; i < n.dim; ++i) v *= n.children[i].eval(x.subspan(i, 1));
      return v;
    }
    case Family::product: return n.children[0].eval(x) * n.children[1].eval(x);
    case Family::sum: return n.children[0].eval(x) + n.children[1].eval(x);
    case Family::reciprocal: return 1.0 / n.children[0].eval(x);
    case Family::dilation: {
      std::vector<double> y(x.begin(), x.end());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] *= n.params[i];
      return n.children[0].eval(y);
    }
  }
  return 0.0;
}

double Weight::log_eval(std::span<const double> x) const {
  if (x.size() != dim()) throw Error(ErrorCode::dimension_mismatch, "weight evaluated at a point of wrong dimension");
  const Node& n = *node_;
  switch (n.family) {
    case Family::constant: return std::log(n.params[0]);
    case Family::polynomial: return 0.5 * n.params[0] * std::log1p(squared_norm(x));
    case Family::exponential: return n.params[0] * std::pow(std::sqrt(squared_norm(x)), 1.0 / n.params[1]);
    case Family::tilt: return std::inner_product(x.begin(), x.end(), n.params.begin(), 0.0);
    case Family::anisotropic: {
      double v = 0.0;
      for (std::size_t i = 0; i < n.dim; ++i) v += n.children[i].log_eval(x.subspan(i, 1));
      return v;
    }
    case Family::product: return n.children[0].log_eval(x) + n.children[1].log_eval(x);
    case Family::sum: {
      const double a = n.children[0].log_eval(x);
      const double b = n.children[1].log_eval(x);
      const double hi = std::max(a, b);
      return hi + std::log1p(std::exp(std::min(a, b) - hi));
    }
    case Family::reciprocal: return -n.children[0].log_eval(x);
    case Family::dilation: {
      std::vector<double> y(x.begin(), x.end());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] *= n.params[i];
      return n.children[0].log_eval(y);
    }
  }
  return 0.0;
}

double Weight::log_bound(std::span<const double> radius) const {
  if (radius.size() != dim()) throw Error(ErrorCode::dimension_mismatch, "radius vector of wrong dimension");
  const Node& n = *node_;
  const double r2 = squared_norm(radius);
  switch (n.family) {
    case Family::constant: return std::abs(std::log(n.params[0]));
    case Family::polynomial: return 0.5 * std::abs(n.params[0]) * std::log1p(r2);
    case Family::exponential: return std::abs(n.params[0]) * std::pow(std::sqrt(r2), 1.0 / n.params[1]);
    case Family::tilt: {
      double s = 0.0;
      for (std::size_t i = 0; i < n.dim; ++i) s += std::abs(n.params[i]) * std::abs(radius[i]);
      return s;
    }
    case Family::anisotropic: {
      double s = 0.0;
      for (std::size_t i = 0; i < n.dim; ++i) s += n.children[i].log_bound(radius.subspan(i, 1));
      return s;
    }
    case Family::product: return n.children[0].log_bound(radius) + n.children[1].log_bound(radius);
    case Family::sum:
      return std::max(n.children[0].log_bound(radius), n.children[1].log_bound(radius)) + std::log(2.0);
    case Family::reciprocal: return n.children[0].log_bound(radius);
    case Family::dilation: {
      std::vector<double> y(radius.begin(), radius.end());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::abs(y[i] * n.params[i]);
      return n.children[0].log_bound(y);
    }
  }
  return 0.0;
}

void Weight::check_on_grid(const GridSpec& grid) const {
  if (grid.dim() != dim()) throw Error(ErrorCode::dimension_mismatch, "weight and grid dimensions differ");
  std::vector<double> radius(dim());
  for (std::size_t i = 0; i < dim(); ++i) radius[i] = 0.5 * static_cast<double>(grid.n(i)) * grid.step(i);
  if (log_bound(radius) > kMaxLogMagnitude) {
    throw Error(ErrorCode::invalid_argument, "weight overflows on this grid (|log w| > 690); reduce its growth rate");
  }
}

bool Weight::operator==(const Weight& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.family == b.family && a.dim == b.dim && a.params == b.params && a.children == b.children;
}

std::string to_string(Weight::Family family) {
  switch (family) {
    case Weight::Family::constant: return "constant";
    case Weight::Family::polynomial: return "polynomial";
    case Weight::Family::exponential: return "exponential";
    case Weight::Family::tilt: return "tilt";
    case Weight::Family::anisotropic: return "anisotropic";
    case Weight::Family::product: return "product";
    case Weight::Family::sum: return "sum";
    case Weight::Family::reciprocal: return "reciprocal";
    case Weight::Family::dilation: return "dilation";
  }
  return "unknown";
}

std::vector<double> sample_on_grid(const Weight& w, const GridSpec& grid) {
  w.check_on_grid(grid);
  std::vector<double> out(grid.size());
  std::vector<double> x(grid.dim());
  for (std::size_t m = 0; m < out.size(); ++m) {
    grid.position(m, x);
    out[m] = w.eval(x);
  }
  return out;
}

namespace {

// Enumerates the integer offsets {-(s-1)/2, ..., (s-1)/2}^d scaled by delta.
struct SampleBox {
  std::size_t dim;
  std::size_t per_axis;
  double delta;
  std::int64_t half;

  std::size_t count() const {
    std::size_t c = 1;
    for (std::size_t i = 0; i < dim; ++i) c *= per_axis;
    return c;
  }
  void offsets(std::size_t flat, std::span<std::int64_t> out) const {
    for (std::size_t i = dim; i-- > 0;) {
      out[i] = static_cast<std::int64_t>(flat % per_axis) - half;
      flat /= per_axis;
    }
  }
};

std::vector<double> log_values(const Weight& w, const SampleBox& box) {
  std::vector<double> out(box.count());
  std::vector<std::int64_t> k(box.dim);
  std::vector<double> x(box.dim);
  for (std::size_t m = 0; m < out.size(); ++m) {
    box.offsets(m, k);
    for (std::size_t i = 0; i < box.dim; ++i) x[i] = static_cast<double>(k[i]) * box.delta;
    out[m] = w.log_eval(x);
  }
  return out;
}

}  // namespace

ModerationCertificate moderation_constant(const Weight& omega, const Weight& v, double radius,
                                          std::size_t samples_per_axis, double bound) {
  if (omega.dim() != v.dim()) throw Error(ErrorCode::dimension_mismatch, "omega and v have different dimensions");
  if (!(radius > 0.0) || samples_per_axis < 2) {
    throw Error(ErrorCode::invalid_argument, "moderation box needs radius > 0 and at least 2 samples");
  }
  const std::size_t d = omega.dim();
  // odd sample counts keep the origin on the lattice
  const std::size_t s = samples_per_axis | 1U;
  const auto half = static_cast<std::int64_t>((s - 1) / 2);
  const double delta = radius / static_cast<double>(half);
  const SampleBox box{d, s, delta, half};
  const SampleBox sum_box{d, 2 * s - 1, delta, 2 * half};

  const auto log_omega = log_values(omega, box);
  const auto log_v = log_values(v, box);
  const auto log_omega_sum = log_values(omega, sum_box);

  std::vector<std::int64_t> kx(d), ky(d);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t ix = 0; ix < box.count(); ++ix) {
    box.offsets(ix, kx);
    for (std::size_t iy = 0; iy < box.count(); ++iy) {
      box.offsets(iy, ky);
      std::size_t sum_flat = 0;
      for (std::size_t i = 0; i < d; ++i) {
        sum_flat = sum_flat * sum_box.per_axis + static_cast<std::size_t>(kx[i] + ky[i] + sum_box.half);
      }
      worst = std::max(worst, log_omega_sum[sum_flat] - log_omega[ix] - log_v[iy]);
    }
  }
  ModerationCertificate cert;
  cert.c_estimate = std::exp(worst);
  cert.radius = radius;
  cert.bound = bound;
  cert.passed = cert.c_estimate <= bound;
  return cert;
}

ModerationCertificate check_submultiplicative(const Weight& v, double radius, std::size_t samples_per_axis,
                                              double bound) {
  ModerationCertificate cert = moderation_constant(v, v, radius, samples_per_axis, bound);
  const std::size_t d = v.dim();
  const std::size_t s = samples_per_axis | 1U;
  const auto half = static_cast<std::int64_t>((s - 1) / 2);
  const SampleBox box{d, s, radius / static_cast<double>(half), half};
  std::vector<std::int64_t> k(d);
  std::vector<double> x(d), minus_x(d);
  for (std::size_t m = 0; m < box.count() && cert.even; ++m) {
    box.offsets(m, k);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = static_cast<double>(k[i]) * box.delta;
      minus_x[i] = -x[i];
    }
    const double a = v.eval(x);
    const double b = v.eval(minus_x);
    if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) cert.even = false;
  }
  cert.passed = cert.passed && cert.even;
  return cert;
}

ModerationCertificate lattice_moderation_constant(const Weight& omega, const Weight& v, const GridSpec& grid,
                                                  std::span<const std::size_t> theta) {
  const std::size_t d = grid.dim();
  if (omega.dim() != d || v.dim() != d) throw Error(ErrorCode::dimension_mismatch, "weights and grid dimensions differ");
  if (theta.size() != d) throw Error(ErrorCode::dimension_mismatch, "lattice step needs one entry per axis");
  std::vector<std::size_t> coarse(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (theta[i] == 0 || grid.n(i) % theta[i] != 0) {
      throw Error(ErrorCode::divisibility, "lattice step must divide the grid size");
    }
    coarse[i] = grid.n(i) / theta[i];
  }
  omega.check_on_grid(grid);
  v.check_on_grid(grid);

  std::vector<double> log_omega(grid.size());
  std::vector<double> pos(d);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    grid.position(m, pos);
    log_omega[m] = omega.log_eval(pos);
  }
  const GridSpec lattice(coarse);
  std::vector<std::size_t> shift_flat(lattice.size());
  std::vector<double> log_v(lattice.size());
  MultiIndex j(d), s(d), x(d);
  for (std::size_t m = 0; m < lattice.size(); ++m) {
    lattice.unflat(m, j);
    for (std::size_t i = 0; i < d; ++i) s[i] = j[i] * static_cast<std::int64_t>(theta[i]);
    shift_flat[m] = grid.flat(s);
    grid.position(shift_flat[m], pos);
    log_v[m] = v.log_eval(pos);
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t mx = 0; mx < grid.size(); ++mx) {
    grid.unflat(mx, x);
    for (std::size_t ms = 0; ms < lattice.size(); ++ms) {
      grid.unflat(shift_flat[ms], s);
      for (std::size_t i = 0; i < d; ++i) s[i] = x[i] - s[i];
      worst = std::max(worst, log_omega[mx] - log_omega[grid.flat(s)] - log_v[ms]);
    }
  }
  ModerationCertificate cert;
  cert.c_estimate = std::exp(worst);
  cert.radius = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    cert.radius = std::max(cert.radius, 0.5 * static_cast<double>(grid.n(i)) * grid.step(i));
  }
  cert.passed = true;
  return cert;
}

Weight theta_rho(const Weight& v, double rho) {
  if (v.dim() % 2 != 0) throw Error(ErrorCode::dimension_mismatch, "theta_rho acts on phase-space weights (even dimension)");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw Error(ErrorCode::invalid_argument, "rho must be a finite non-negative number");
  return v * Weight::polynomial(v.dim(), rho);
}

double required_rho(std::size_t d, double r) {
  if (!(r > 0.0) || r > 1.0) throw Error(ErrorCode::invalid_argument, "r must lie in (0, 1]");
  if (d == 0) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  return 2.0 * static_cast<double>(d) * (1.0 - r) / r;
}

}  // namespace tfmod
