#include "cli/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "tfmod/error.hpp"

namespace tfmod::cli {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

// Object reader that remembers which keys were consumed so that typos in
// field names are reported instead of silently ignored.
class Obj {
 public:
  Obj(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) bad(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  std::string at(const std::string& key) const { return path_ + "." + key; }

  bool has(const std::string& key) {
    used_.insert(key);
    return j_.contains(key);
  }

  const Json& get(const std::string& key) {
    if (!has(key)) bad(path_, "missing field \"" + key + "\"");
    return j_[key];
  }

  const Json* find(const std::string& key) { return has(key) ? &j_[key] : nullptr; }

  std::string str(const std::string& key, std::optional<std::string> fallback = {}) {
    if (!has(key)) {
      if (!fallback) bad(path_, "missing field \"" + key + "\"");
      return *fallback;
    }
    if (!j_[key].is_string()) bad(at(key), "expected a string");
    return j_[key].get<std::string>();
  }

  double real(const std::string& key, std::optional<double> fallback = {}) {
    if (!has(key)) {
      if (!fallback) bad(path_, "missing field \"" + key + "\"");
      return *fallback;
    }
    return decode_real(j_[key], at(key));
  }

  std::size_t size(const std::string& key, std::optional<std::size_t> fallback = {}) {
    if (!has(key)) {
      if (!fallback) bad(path_, "missing field \"" + key + "\"");
      return *fallback;
    }
    const Json& v = j_[key];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      bad(at(key), "expected a non-negative integer");
    }
    return v.get<std::size_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    if (!j_[key].is_boolean()) bad(at(key), "expected true or false");
    return j_[key].get<bool>();
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) bad(path_, "unknown field \"" + key + "\"");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

// Library decode/construct errors become config errors.
template <class Fn>
auto lib(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

std::vector<std::size_t> sizes_or_scalar(const Json& j, std::size_t d, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() <= 0) bad(path, "expected a positive integer");
    return std::vector<std::size_t>(d, j.get<std::size_t>());
  }
  if (!j.is_array() || j.size() != d) bad(path, "expected " + std::to_string(d) + " positive integers");
  std::vector<std::size_t> out;
  for (const Json& v : j) {
    if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) bad(path, "expected positive integers");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

std::vector<double> reals_or_scalar(const Json& j, std::size_t d, const std::string& path) {
  if (!j.is_array()) return std::vector<double>(d, lib(path, [&] { return decode_real(j, path); }));
  if (j.size() != d) bad(path, "expected " + std::to_string(d) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(lib(path, [&] { return decode_real(j[i], path); }));
  return out;
}

std::uint64_t decode_seed(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    bad(path, "seed must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

struct Context {
  GridSpec grid;
  std::optional<std::uint64_t> seed;
  bool seed_used = false;
};

// {"kind": ..., params} or "kind" or {"re": [...], "im": [...]}.
SignalNd decode_signal_spec(const Json& j, Context& ctx, const std::string& path, const GridSpec* grid_override = nullptr) {
  const GridSpec& grid = grid_override ? *grid_override : ctx.grid;
  if (j.is_string()) {
    Json obj{{"kind", j}};
    return decode_signal_spec(obj, ctx, path, grid_override);
  }
  Obj o(j, path);
  if (o.has("re")) {
    Json data{{"grid", encode(grid)}, {"re", o.get("re")}};
    if (o.has("im")) data["im"] = o.get("im");
    o.finish();
    return lib(path, [&] { return decode_signal(data, path); });
  }
  const std::string kind_name = o.str("kind");
  const SignalKind kind = lib(o.at("kind"), [&] { return signal_kind_from_string(kind_name); });
  const std::size_t d = grid.dim();
  SignalParams params;
  if (const Json* w = o.find("width")) params.width = reals_or_scalar(*w, d, o.at("width"));
  if (o.has("order")) params.order = static_cast<int>(o.size("order"));
  if (const Json* pos = o.find("position")) {
    if (!pos->is_array() || pos->size() != d) bad(o.at("position"), "expected " + std::to_string(d) + " integers");
    for (const Json& v : *pos) {
      if (!v.is_number_integer()) bad(o.at("position"), "expected integers");
      params.position.push_back(v.get<std::int64_t>());
    }
  }
  if (const Json* r = o.find("radius")) params.radius = reals_or_scalar(*r, d, o.at("radius"));
  if (const Json* s = o.find("seed")) {
    params.seed = decode_seed(*s, o.at("seed"));
  } else if (kind == SignalKind::random) {
    if (!ctx.seed) bad(path, "random signal needs a seed (field \"seed\" here or on the experiment)");
    params.seed = *ctx.seed;
    ctx.seed_used = true;
  }
  params.normalize = o.boolean("normalize", false);
  const double scale = o.real("scale", 1.0);
  o.finish();
  SignalNd f = lib(path, [&] { return standard_signal(grid, kind, params); });
  return scale == 1.0 ? f : f.scaled(scale);
}

SequenceNd decode_sequence_spec(const Json& j, Context& ctx, std::span<const std::size_t> theta, const std::string& path) {
  std::vector<std::size_t> shape;
  for (std::size_t i = 0; i < ctx.grid.dim(); ++i) {
    if (theta[i] == 0 || ctx.grid.n(i) % theta[i] != 0) bad(path, "theta must divide the grid size");
    shape.push_back(ctx.grid.n(i) / theta[i]);
  }
  if (std::any_of(shape.begin(), shape.end(), [](std::size_t s) { return s < 2; })) {
    bad(path, "coefficient grid N / theta needs at least 2 points per axis");
  }
  const GridSpec coarse(shape);
  return SequenceNd::from_signal(decode_signal_spec(j, ctx, path, &coarse));
}

MixedNormSpec decode_spec(const Json& j, std::size_t dim, const std::string& path) {
  MixedNormSpec spec = lib(path, [&] { return decode_mixed_norm_spec(j, path); });
  if (spec.dim() != dim) bad(path, "expected " + std::to_string(dim) + " exponents");
  if (spec.omega.dim() != dim) bad(path + ".omega", "weight dimension must be " + std::to_string(dim));
  return spec;
}

Weight decode_weight_dim(const Json& j, std::size_t dim, const std::string& path) {
  Weight w = lib(path, [&] { return decode_weight(j, path); });
  if (w.dim() != dim) bad(path, "weight dimension must be " + std::to_string(dim));
  return w;
}

Permutation decode_sigma(Obj& o, std::size_t dim) {
  if (!o.has("sigma")) return identity_permutation(dim);
  return lib(o.at("sigma"), [&] { return decode_permutation(o.get("sigma"), dim, o.at("sigma")); });
}

ExponentVector decode_p(const Json& j, std::size_t dim, const std::string& path) {
  ExponentVector p = lib(path, [&] { return decode_exponents(j, path); });
  if (p.size() != dim) bad(path, "expected " + std::to_string(dim) + " exponents");
  return p;
}

NormJob decode_norm(Obj& o, Context& ctx) {
  const std::size_t d = ctx.grid.dim();
  const std::string name = o.str("norm", std::string("modulation"));
  NormJob job{.f = decode_signal_spec(o.get("signal"), ctx, o.at("signal"))};
  if (o.has("window")) job.window = decode_signal_spec(o.get("window"), ctx, o.at("window"));
  auto need_window = [&] {
    if (!job.window) bad(o.path(), "norm \"" + name + "\" needs a \"window\"");
    if (job.window->is_zero()) bad(o.at("window"), "window must not vanish identically");
  };
  if (name == "modulation") {
    job.norm = NormJob::Norm::modulation;
    need_window();
    job.spec = decode_spec(o.get("spec"), 2 * d, o.at("spec"));
  } else if (name == "lebesgue") {
    job.norm = NormJob::Norm::lebesgue;
    job.spec = decode_spec(o.get("spec"), d, o.at("spec"));
  } else if (name == "amalgam") {
    job.norm = NormJob::Norm::amalgam;
    need_window();
    job.p = lib(o.at("p"), [&] { return decode_exponent(o.get("p"), o.at("p")); });
    job.q = lib(o.at("q"), [&] { return decode_exponent(o.get("q"), o.at("q")); });
    job.omega = o.has("omega") ? decode_weight_dim(o.get("omega"), 2 * d, o.at("omega")) : Weight::constant(2 * d);
  } else if (name == "fourier-lebesgue") {
    job.norm = NormJob::Norm::fourier_lebesgue;
    job.q = lib(o.at("q"), [&] { return decode_exponent(o.get("q"), o.at("q")); });
    job.omega = o.has("omega") ? decode_weight_dim(o.get("omega"), 2 * d, o.at("omega")) : Weight::constant(2 * d);
    job.anchor = o.has("anchor") ? reals_or_scalar(o.get("anchor"), d, o.at("anchor")) : std::vector<double>(d, 0.0);
  } else {
    bad(o.at("norm"), "unknown norm \"" + name + "\" (modulation, amalgam, fourier-lebesgue, lebesgue)");
  }
  return job;
}

LatticeSpec decode_lattice_field(Obj& o, const GridSpec& grid) {
  const Json& j = o.get("lattice");
  Obj l(j, o.at("lattice"));
  LatticeSpec lat{sizes_or_scalar(l.get("a"), grid.dim(), l.at("a")), sizes_or_scalar(l.get("b"), grid.dim(), l.at("b"))};
  l.finish();
  lib(o.at("lattice"), [&] {
    lat.validate(grid);
    return 0;
  });
  return lat;
}

GaborDualJob decode_gabor_dual(Obj& o, Context& ctx) {
  SignalNd window = decode_signal_spec(o.get("window"), ctx, o.at("window"));
  if (window.is_zero()) bad(o.at("window"), "window must not vanish identically");
  const LatticeSpec lat = decode_lattice_field(o, ctx.grid);
  GaborDualJob job{.sys = GaborSystem(std::move(window), lat)};
  job.tol = o.real("tol", 1e-12);
  job.max_iter = o.size("max_iter", 1000);
  job.n_signals = o.size("n_signals", 20);
  if (!(job.tol > 0.0)) bad(o.at("tol"), "tolerance must be positive");
  if (job.n_signals > 0) {
    if (!ctx.seed) bad(o.path(), "gabor-dual draws random probe signals and needs a \"seed\"");
    ctx.seed_used = true;
  }
  return job;
}

ConvInstance decode_case(const Json& j, Context& ctx, const std::string& path) {
  Obj o(j, path);
  const std::size_t d = ctx.grid.dim();
  const std::string est = o.str("estimate");
  const double tol = o.real("tolerance", 1e-10);
  auto weight_or_one = [&](const char* key) {
    return o.has(key) ? decode_weight_dim(o.get(key), d, o.at(key)) : Weight::constant(d);
  };
  if (est == "semidiscrete") {
    const auto theta = sizes_or_scalar(o.get("theta"), d, o.at("theta"));
    ExponentVector p = decode_p(o.get("p"), d, o.at("p"));
    SemidiscreteCase c{ctx.grid, theta, p, decode_sigma(o, d), weight_or_one("omega"), weight_or_one("v"), tol};
    SequenceNd a = decode_sequence_spec(o.get("a"), ctx, theta, o.at("a"));
    SignalNd f = decode_signal_spec(o.get("f"), ctx, o.at("f"));
    o.finish();
    return SemidiscreteInstance{std::move(c), std::move(a), std::move(f)};
  }
  if (est == "dilation") {
    DilationCase c{ctx.grid,
                   sizes_or_scalar(o.get("theta"), d, o.at("theta")),
                   sizes_or_scalar(o.get("block"), d, o.at("block")),
                   lib(o.at("q"), [&] { return decode_exponent(o.get("q"), o.at("q")); }),
                   decode_p(o.get("p"), d, o.at("p")),
                   decode_sigma(o, d),
                   weight_or_one("omega"),
                   tol};
    SignalNd f = decode_signal_spec(o.get("f"), ctx, o.at("f"));
    o.finish();
    return DilationInstance{std::move(c), std::move(f)};
  }
  if (est == "wiener") {
    const int part = static_cast<int>(o.size("part", 1));
    if (part != 1 && part != 2) bad(o.at("part"), "part must be 1 or 2");
    const Json& pj = o.get("p");
    if (!pj.is_array() || pj.size() != 3) bad(o.at("p"), "expected three exponent vectors [p0, p1, p2]");
    std::array<ExponentVector, 3> p{decode_p(pj[0], d, o.at("p") + "[0]"), decode_p(pj[1], d, o.at("p") + "[1]"),
                                    decode_p(pj[2], d, o.at("p") + "[2]")};
    std::array<Weight, 3> omega{Weight::constant(d), Weight::constant(d), Weight::constant(d)};
    if (o.has("omega")) {
      const Json& wj = o.get("omega");
      if (!wj.is_array() || wj.size() != 3) bad(o.at("omega"), "expected three weights [omega0, omega1, omega2]");
      for (std::size_t i = 0; i < 3; ++i) omega[i] = decode_weight_dim(wj[i], d, o.at("omega") + "[" + std::to_string(i) + "]");
    }
    std::array<double, 3> q{kInf, kInf, kInf};
    if (part == 1) {
      const Json& qj = o.get("q");
      if (!qj.is_array() || qj.size() != 3) bad(o.at("q"), "expected three exponents [q0, q1, q2]");
      for (std::size_t i = 0; i < 3; ++i) q[i] = lib(o.at("q"), [&] { return decode_exponent(qj[i], o.at("q")); });
    }
    WienerInstance inst{WienerConvCase{ctx.grid, sizes_or_scalar(o.get("block"), d, o.at("block")), q, p,
                                       decode_sigma(o, d), omega, {}, tol},
                        part,
                        {},
                        {},
                        {}};
    if (part == 1) {
      inst.f1 = decode_signal_spec(o.get("f1"), ctx, o.at("f1"));
      inst.f2 = decode_signal_spec(o.get("f2"), ctx, o.at("f2"));
    } else {
      inst.c.theta = sizes_or_scalar(o.get("theta"), d, o.at("theta"));
      inst.a = decode_sequence_spec(o.get("a"), ctx, inst.c.theta, o.at("a"));
      inst.f1 = decode_signal_spec(o.get("f"), ctx, o.at("f"));
    }
    o.finish();
    return inst;
  }
  bad(o.at("estimate"), "unknown estimate \"" + est + "\" (semidiscrete, dilation, wiener)");
}

ConvSweepJob decode_conv_sweep(Obj& o, Context& ctx) {
  ConvSweepJob job;
  if (const Json* sweeps = o.find("sweeps")) {
    if (!sweeps->is_array()) bad(o.at("sweeps"), "expected an array");
    for (std::size_t i = 0; i < sweeps->size(); ++i) {
      const std::string path = o.at("sweeps") + "[" + std::to_string(i) + "]";
      Obj s((*sweeps)[i], path);
      const std::string est = s.str("estimate");
      if (est != "semidiscrete" && est != "dilation" && est != "wiener") {
        bad(s.at("estimate"), "unknown estimate \"" + est + "\" (semidiscrete, dilation, wiener)");
      }
      job.sweeps.emplace_back(est, s.size("count"));
      s.finish();
    }
    if (!job.sweeps.empty()) {
      if (!ctx.seed) bad(o.path(), "randomized sweeps need a \"seed\"");
      ctx.seed_used = true;
    }
  }
  if (const Json* cases = o.find("cases")) {
    if (!cases->is_array()) bad(o.at("cases"), "expected an array");
    for (std::size_t i = 0; i < cases->size(); ++i) {
      job.instances.push_back(decode_case((*cases)[i], ctx, o.at("cases") + "[" + std::to_string(i) + "]"));
    }
  }
  if (job.sweeps.empty() && job.instances.empty()) bad(o.path(), "conv-sweep needs \"sweeps\" or \"cases\"");
  return job;
}

Check::Type check_type_from_string(const std::string& s, const std::string& path) {
  using T = Check::Type;
  for (T t : {T::window_independence, T::embedding, T::gabor_equivalence, T::wiener_equivalence, T::compact_support,
              T::local_bound, T::decay_fit}) {
    if (to_string(t) == s) return t;
  }
  bad(path, "unknown check type \"" + s + "\"");
}

Check decode_check(const Json& j, Context& ctx, const std::string& path) {
  using T = Check::Type;
  Obj o(j, path);
  const std::size_t d = ctx.grid.dim();
  Check c;
  c.type = check_type_from_string(o.str("type"), o.at("type"));
  c.label = o.str("label", to_string(c.type));
  c.n_signals = o.size("n_signals", 50);
  c.bound = o.real("bound", kDefaultSpreadBound);
  c.tol = o.real("tol", 1e-10);
  if (o.has("expected_spread")) c.expected_spread = o.real("expected_spread");
  c.rel_tol = o.real("rel_tol", 0.1);
  auto window = [&](const char* key) {
    SignalNd w = decode_signal_spec(o.get(key), ctx, o.at(key));
    if (w.is_zero()) bad(o.at(key), "window must not vanish identically");
    return w;
  };
  auto spec = [&](const char* key) { return decode_spec(o.get(key), 2 * d, o.at(key)); };
  switch (c.type) {
    case T::window_independence:
      c.window1 = window("window");
      c.window2 = window("window2");
      c.spec1 = spec("spec");
      break;
    case T::embedding:
      c.window1 = window("window");
      c.spec1 = spec("spec");
      c.spec2 = spec("spec2");
      break;
    case T::gabor_equivalence:
      c.window1 = window("window");
      c.lattice = decode_lattice_field(o, ctx.grid);
      c.spec1 = spec("spec");
      c.dual = o.str("dual", std::string("canonical"));
      if (c.dual != "canonical" && c.dual != "tight") bad(o.at("dual"), "dual must be \"canonical\" or \"tight\"");
      break;
    case T::wiener_equivalence:
      c.window1 = window("window");
      c.window2 = o.has("window2") ? window("window2") : *c.window1;
      c.spec1 = spec("spec");
      c.block = sizes_or_scalar(o.get("block"), 2 * d, o.at("block"));
      break;
    case T::compact_support: {
      CompactSupportCase cs{ctx.grid, 0.0, 0.0, 1.0, {}, Weight::constant(2 * d)};
      cs.support_radius = o.real("support_radius");
      cs.window_radius = o.real("window_radius", cs.support_radius);
      cs.q = lib(o.at("q"), [&] { return decode_exponent(o.get("q"), o.at("q")); });
      const Json& pl = o.get("p_list");
      if (!pl.is_array() || pl.empty()) bad(o.at("p_list"), "expected a non-empty array of exponents");
      cs.p_list.clear();
      for (const Json& p : pl) cs.p_list.push_back(lib(o.at("p_list"), [&] { return decode_exponent(p, o.at("p_list")); }));
      cs.omega = o.has("omega") ? decode_weight_dim(o.get("omega"), 2 * d, o.at("omega")) : Weight::constant(2 * d);
      c.compact = cs;
      break;
    }
    case T::local_bound: {
      LocalBoundCase lb{ctx.grid};
      if (o.has("p")) lb.p = lib(o.at("p"), [&] { return decode_exponent(o.get("p"), o.at("p")); });
      lb.radius = o.real("radius", lb.radius);
      lb.n_centers = o.size("n_centers", lb.n_centers);
      lb.factor = o.real("factor", lb.factor);
      c.local = lb;
      break;
    }
    case T::decay_fit:
      break;
  }
  if (c.type != T::decay_fit) {
    if (!ctx.seed) bad(path, "check \"" + c.label + "\" draws random signals and needs a \"seed\"");
    ctx.seed_used = true;
  }
  o.finish();
  return c;
}

Kind kind_from_string(const std::string& s, const std::string& path) {
  for (Kind k : {Kind::norm, Kind::gabor_dual, Kind::conv_sweep, Kind::verify_suite, Kind::report}) {
    if (to_string(k) == s) return k;
  }
  bad(path, "unknown kind \"" + s + "\" (norm, gabor-dual, conv-sweep, verify-suite, report)");
}

Experiment decode_experiment(const Json& j, const std::string& path, std::size_t index,
                             std::optional<std::uint64_t> seed_override, std::size_t default_max_dim) {
  Obj o(j, path);
  Experiment e;
  e.name = o.str("name", "experiment-" + std::to_string(index));
  e.kind = kind_from_string(o.str("kind"), o.at("kind"));
  e.grid = lib(o.at("grid"), [&] { return decode_grid(o.get("grid"), o.at("grid")); });
  const std::size_t max_dim = o.size("max_dim", default_max_dim);
  if (e.grid.dim() > max_dim) {
    bad(o.at("grid"), "dimension " + std::to_string(e.grid.dim()) + " exceeds max_dim " + std::to_string(max_dim));
  }
  if (o.has("seed")) e.seed = decode_seed(o.get("seed"), o.at("seed"));
  if (seed_override) e.seed = seed_override;
  e.output = o.str("output", e.name);
  if (e.output.empty() || e.output.find("..") != std::string::npos || e.output.front() == '/') {
    bad(o.at("output"), "output must be a relative path prefix without \"..\"");
  }
  const std::string fmt = o.str("format", std::string("json"));
  if (fmt == "json") {
    e.format = Format::json;
  } else if (fmt == "csv") {
    e.format = Format::csv;
  } else if (fmt == "both") {
    e.format = Format::both;
  } else {
    bad(o.at("format"), "format must be csv, json or both");
  }
  e.plot = o.boolean("plot", false);

  Context ctx{e.grid, e.seed};
  switch (e.kind) {
    case Kind::norm:
      e.job = decode_norm(o, ctx);
      if (e.plot && !std::get<NormJob>(e.job).window) bad(o.at("plot"), "plot needs a \"window\"");
      break;
    case Kind::gabor_dual:
      e.job = decode_gabor_dual(o, ctx);
      break;
    case Kind::conv_sweep:
      e.job = decode_conv_sweep(o, ctx);
      if (e.plot) bad(o.at("plot"), "conv-sweep has no heatmap");
      break;
    case Kind::verify_suite: {
      ReportJob job;
      const Json& checks = o.get("checks");
      if (!checks.is_array() || checks.empty()) bad(o.at("checks"), "expected a non-empty array");
      for (std::size_t i = 0; i < checks.size(); ++i) {
        job.checks.push_back(decode_check(checks[i], ctx, o.at("checks") + "[" + std::to_string(i) + "]"));
      }
      e.job = std::move(job);
      break;
    }
    case Kind::report:
      e.job = ReportJob{{decode_check(o.get("report"), ctx, o.at("report"))}};
      break;
  }
  if (e.plot && e.kind != Kind::norm && e.kind != Kind::gabor_dual) {
    bad(o.at("plot"), "heatmaps are produced by the norm and gabor-dual kinds only");
  }
  if (e.plot && e.grid.dim() != 1) bad(o.at("plot"), "heatmaps are only drawn for d = 1 (two-dimensional phase space)");
  o.finish();
  return e;
}

std::string position_text(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Config decode_root(const Json& root, std::string_view text, std::optional<std::uint64_t> seed_override);

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::norm: return "norm";
    case Kind::gabor_dual: return "gabor-dual";
    case Kind::conv_sweep: return "conv-sweep";
    case Kind::verify_suite: return "verify-suite";
    case Kind::report: return "report";
  }
  return "unknown";
}

std::string to_string(Check::Type type) {
  using T = Check::Type;
  switch (type) {
    case T::window_independence: return "window-independence";
    case T::embedding: return "embedding";
    case T::gabor_equivalence: return "gabor-equivalence";
    case T::wiener_equivalence: return "wiener-equivalence";
    case T::compact_support: return "compact-support";
    case T::local_bound: return "local-bound";
    case T::decay_fit: return "decay-fit";
  }
  return "unknown";
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Config parse_config(std::string_view text, std::optional<std::uint64_t> seed_override) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    if (auto pos = what.find("parse error"); pos != std::string::npos) {
      if (auto colon = what.find(": ", pos); colon != std::string::npos) what = what.substr(colon + 2);
    }
    throw ConfigError("malformed JSON at " + position_text(text, e.byte) + ": " + what);
  }
  try {
    return decode_root(root, text, seed_override);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

Config decode_root(const Json& root, std::string_view text, std::optional<std::uint64_t> seed_override) {
  Config cfg;
  cfg.hash = fnv1a_hex(text);
  if (root.is_object() && root.contains("experiments")) {
    Obj top(root, "$");
    const std::size_t max_dim = top.size("max_dim", kDefaultMaxDim);
    const Json& list = top.get("experiments");
    top.finish();
    if (!list.is_array() || list.empty()) bad("$.experiments", "expected a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      cfg.experiments.push_back(
          decode_experiment(list[i], "$.experiments[" + std::to_string(i) + "]", i, seed_override, max_dim));
    }
  } else {
    cfg.experiments.push_back(decode_experiment(root, "$", 0, seed_override, kDefaultMaxDim));
  }
  std::set<std::string> outputs;
  for (const Experiment& e : cfg.experiments) {
    if (!outputs.insert(e.output).second) bad("$", "two experiments write to output \"" + e.output + "\"");
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), seed_override);
}

}  // namespace tfmod::cli
