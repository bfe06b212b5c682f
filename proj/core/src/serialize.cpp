#include "tfmod/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string_view>

#include "tfmod/error.hpp"

namespace tfmod {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::parse_error, path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t decode_size(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> decode_sizes(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_size(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> decode_reals(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_real(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Json encode_reals(std::span<const double> xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(encode_real(x));
  return out;
}

Weight::Family family_from_string(const std::string& name, const std::string& path) {
  using F = Weight::Family;
  for (F f : {F::constant, F::polynomial, F::exponential, F::tilt, F::anisotropic, F::product, F::sum, F::reciprocal,
              F::dilation}) {
    if (to_string(f) == name) return f;
  }
  fail(path, "unknown weight family \"" + name + "\"");
}

template <class Fn>
auto guarded(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse_error) throw;
    fail(path, e.what());
  } catch (const Json::exception& e) {
    fail(path, e.what());
  }
}

}  // namespace

Json encode_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double decode_real(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(path, "expected a number");
}

double decode_exponent(const Json& j, const std::string& path) {
  const double p = decode_real(j, path);
  if (!(p > 0.0)) fail(path, "exponent must lie in (0, inf]");
  return p;
}

Json encode(const GridSpec& grid) {
  return Json{{"n", std::vector<std::size_t>(grid.n().begin(), grid.n().end())},
              {"step", encode_reals(grid.step())}};
}

GridSpec decode_grid(const Json& j, const std::string& path) {
  auto n = decode_sizes(field(j, "n", path), path + ".n");
  std::vector<double> step;
  if (j.contains("step")) step = decode_reals(j["step"], path + ".step");
  return guarded(path, [&] { return GridSpec(std::move(n), std::move(step)); });
}

Json encode(const Weight& w) {
  using F = Weight::Family;
  const auto params = w.params();
  Json out{{"family", to_string(w.family())}};
  switch (w.family()) {
    case F::constant:
      out["dim"] = w.dim();
      out["params"] = Json{{"c", encode_real(params[0])}};
      break;
    case F::polynomial:
      out["dim"] = w.dim();
      out["params"] = Json{{"s", encode_real(params[0])}};
      break;
    case F::exponential:
      out["dim"] = w.dim();
      out["params"] = Json{{"r", encode_real(params[0])}, {"s", encode_real(params[1])}};
      break;
    case F::tilt:
      out["params"] = Json{{"u", encode_reals(params)}};
      break;
    case F::dilation:
      out["params"] = Json{{"theta", encode_reals(params)}};
      [[fallthrough]];
    default: {
      Json kids = Json::array();
      for (const Weight& c : w.children()) kids.push_back(encode(c));
      out["children"] = std::move(kids);
    }
  }
  return out;
}

Weight decode_weight(const Json& j, const std::string& path) {
  using F = Weight::Family;
  const Json& fam = field(j, "family", path);
  if (!fam.is_string()) fail(path + ".family", "expected a string");
  const F family = family_from_string(fam.get<std::string>(), path + ".family");
  const std::string ppath = path + ".params";
  auto param = [&](const char* key, std::optional<double> fallback = {}) {
    if (j.contains("params") && j["params"].is_object() && j["params"].contains(key)) {
      return decode_real(j["params"][key], ppath + "." + key);
    }
    if (!fallback) fail(ppath, std::string("missing parameter \"") + key + "\"");
    return *fallback;
  };
  auto param_list = [&](const char* key) {
    if (!j.contains("params") || !j["params"].is_object() || !j["params"].contains(key)) {
      fail(ppath, std::string("missing parameter \"") + key + "\"");
    }
    return decode_reals(j["params"][key], ppath + "." + key);
  };
  {
    std::vector<std::string_view> allowed;
    switch (family) {
      case F::constant: allowed = {"c"}; break;
      case F::polynomial: allowed = {"s"}; break;
      case F::exponential: allowed = {"r", "s"}; break;
      case F::tilt: allowed = {"u"}; break;
      case F::dilation: allowed = {"theta"}; break;
      default: break;
    }
    if (j.contains("params")) {
      if (!j["params"].is_object()) fail(ppath, "expected an object");
      for (const auto& [key, value] : j["params"].items()) {
        if (std::ranges::find(allowed, key) == allowed.end()) fail(ppath + "." + key, "unknown parameter");
      }
    }
  }
  auto dim = [&] { return decode_size(field(j, "dim", path), path + ".dim"); };
  auto children = [&] {
    const Json& kids = field(j, "children", path);
    if (!kids.is_array() || kids.empty()) fail(path + ".children", "expected a non-empty array");
    std::vector<Weight> out;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      out.push_back(decode_weight(kids[i], path + ".children[" + std::to_string(i) + "]"));
    }
    return out;
  };
  return guarded(path, [&]() -> Weight {
    switch (family) {
      case F::constant:
        return Weight::constant(dim(), param("c", 1.0));
      case F::polynomial:
        return Weight::polynomial(dim(), param("s"));
      case F::exponential:
        return Weight::exponential(dim(), param("r"), param("s", 1.0));
      case F::tilt:
        return Weight::tilt(param_list("u"));
      case F::anisotropic:
        return Weight::anisotropic(children());
      case F::product:
      case F::sum: {
        auto kids = children();
        Weight acc = kids[0];
        for (std::size_t i = 1; i < kids.size(); ++i) acc = family == F::product ? acc * kids[i] : acc + kids[i];
        return acc;
      }
      case F::reciprocal: {
        auto kids = children();
        if (kids.size() != 1) fail(path + ".children", "reciprocal takes one child");
        return kids[0].reciprocal();
      }
      case F::dilation: {
        auto kids = children();
        if (kids.size() != 1) fail(path + ".children", "dilation takes one child");
        return kids[0].dilated(param_list("theta"));
      }
    }
    fail(path, "unhandled weight family");
  });
}

Json encode(const ExponentVector& p) { return encode_reals(p.values()); }

ExponentVector decode_exponents(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of exponents");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_exponent(j[i], path + "[" + std::to_string(i) + "]"));
  return ExponentVector(std::move(out));
}

Json encode_permutation(const Permutation& sigma) {
  Json out = Json::array();
  for (std::size_t s : sigma) out.push_back(s + 1);
  return out;
}

Permutation decode_permutation(const Json& j, std::size_t dim, const std::string& path) {
  const auto raw = decode_sizes(j, path);
  Permutation sigma;
  for (std::size_t s : raw) {
    if (s == 0) fail(path, "permutations are 1-based");
    sigma.push_back(s - 1);
  }
  guarded(path, [&] {
    validate_permutation(sigma, dim);
    return 0;
  });
  return sigma;
}

Json encode(const MixedNormSpec& spec) {
  return Json{{"p", encode(spec.p)},
              {"sigma", encode_permutation(spec.sigma)},
              {"omega", encode(spec.omega)},
              {"step", encode_reals(spec.step)}};
}

MixedNormSpec decode_mixed_norm_spec(const Json& j, const std::string& path) {
  ExponentVector p = decode_exponents(field(j, "p", path), path + ".p");
  Permutation sigma;
  if (j.contains("sigma")) sigma = decode_permutation(j["sigma"], p.size(), path + ".sigma");
  std::optional<Weight> omega;
  if (j.contains("omega")) omega = decode_weight(j["omega"], path + ".omega");
  std::vector<double> step;
  if (j.contains("step")) step = decode_reals(j["step"], path + ".step");
  return guarded(path, [&] { return MixedNormSpec(std::move(p), std::move(sigma), std::move(omega), std::move(step)); });
}

Json encode(const LatticeSpec& lattice) { return Json{{"a", lattice.a}, {"b", lattice.b}}; }

LatticeSpec decode_lattice(const Json& j, const std::string& path) {
  return LatticeSpec{decode_sizes(field(j, "a", path), path + ".a"), decode_sizes(field(j, "b", path), path + ".b")};
}

Json encode(const SignalNd& f) {
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(f.size());
  im.reserve(f.size());
  for (const cplx& z : f.data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return Json{{"grid", encode(f.grid())}, {"re", re}, {"im", im}};
}

SignalNd decode_signal(const Json& j, const std::string& path) {
  GridSpec grid = decode_grid(field(j, "grid", path), path + ".grid");
  const auto re = decode_reals(field(j, "re", path), path + ".re");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = decode_reals(j["im"], path + ".im");
  if (re.size() != grid.size() || im.size() != grid.size()) fail(path, "sample count differs from the grid size");
  std::vector<cplx> data(re.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = {re[i], im[i]};
  return guarded(path, [&] { return SignalNd(std::move(grid), std::move(data)); });
}

Json encode(const GaborSystem& sys) {
  Json out{{"window", encode(sys.window())}, {"lattice", encode(sys.lattice())}};
  out["dual"] = sys.dual() ? encode(*sys.dual()) : Json(nullptr);
  if (sys.frame_bounds()) {
    out["frame_bounds"] = Json{{"lower", sys.frame_bounds()->lower}, {"upper", sys.frame_bounds()->upper}};
  } else {
    out["frame_bounds"] = nullptr;
  }
  return out;
}

GaborSystem decode_gabor_system(const Json& j, const std::string& path) {
  SignalNd window = decode_signal(field(j, "window", path), path + ".window");
  LatticeSpec lattice = decode_lattice(field(j, "lattice", path), path + ".lattice");
  std::optional<SignalNd> dual;
  if (j.contains("dual") && !j["dual"].is_null()) dual = decode_signal(j["dual"], path + ".dual");
  GaborSystem sys = guarded(path, [&] { return GaborSystem(std::move(window), std::move(lattice), std::move(dual)); });
  if (j.contains("frame_bounds") && !j["frame_bounds"].is_null()) {
    const Json& fb = j["frame_bounds"];
    const FrameBounds bounds{decode_real(field(fb, "lower", path + ".frame_bounds"), path + ".frame_bounds.lower"),
                             decode_real(field(fb, "upper", path + ".frame_bounds"), path + ".frame_bounds.upper")};
    sys = guarded(path, [&] { return sys.with_frame_bounds(bounds); });
  }
  return sys;
}

Json encode(const EquivalenceReport& report) {
  Json constants = Json::object();
  for (const auto& [k, v] : report.constants) constants[k] = encode_real(v);
  return Json{{"schema", kSchemaVersion},
              {"kind", "equivalence"},
              {"name", report.name},
              {"seed", report.seed},
              {"ensemble_size", report.ratios.size()},
              {"ratios", encode_reals(report.ratios)},
              {"ratio_min", encode_real(report.ratio_min)},
              {"ratio_max", encode_real(report.ratio_max)},
              {"spread", encode_real(report.spread)},
              {"bound", encode_real(report.bound)},
              {"passed", report.passed},
              {"constants", constants},
              {"info", report.info}};
}

Json encode(const ConvEstimateReport& report) {
  Json factors = Json::array();
  for (const auto& [name, v] : report.rhs_factors) factors.push_back(Json{{"name", name}, {"value", encode_real(v)}});
  return Json{{"schema", kSchemaVersion},
              {"kind", "conv-estimate"},
              {"estimate", report.estimate},
              {"lhs", encode_real(report.lhs)},
              {"rhs_factors", factors},
              {"constant_bound", encode_real(report.constant_bound)},
              {"ratio", encode_real(report.ratio)},
              {"tolerance", encode_real(report.tolerance)},
              {"passed", report.passed},
              {"seed", report.seed},
              {"descriptor", report.descriptor}};
}

Json encode(const SweepSummary& summary) {
  Json reports = Json::array();
  for (const auto& r : summary.reports) reports.push_back(encode(r));
  return Json{{"schema", kSchemaVersion},
              {"kind", "sweep"},
              {"estimate", summary.estimate},
              {"instances", summary.instances},
              {"failures", summary.failures},
              {"ratio_min", encode_real(summary.ratio_min)},
              {"ratio_max", encode_real(summary.ratio_max)},
              {"spread", encode_real(summary.spread)},
              {"spread_bound", encode_real(summary.spread_bound)},
              {"passed", summary.passed},
              {"reports", reports}};
}

std::string csv_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const EquivalenceReport& report) {
  out << "index,ratio\n";
  for (std::size_t i = 0; i < report.ratios.size(); ++i) out << i << ',' << csv_real(report.ratios[i]) << '\n';
}

void write_csv(std::ostream& out, const SweepSummary& summary) {
  out << "index,seed,lhs,constant_bound,ratio,passed,descriptor\n";
  for (std::size_t i = 0; i < summary.reports.size(); ++i) {
    const auto& r = summary.reports[i];
    out << i << ',' << r.seed << ',' << csv_real(r.lhs) << ',' << csv_real(r.constant_bound) << ','
        << csv_real(r.ratio) << ',' << (r.passed ? 1 : 0) << ",\"" << r.descriptor << "\"\n";
  }
}

}  // namespace tfmod
