#include "cli/runner.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli/heatmap.hpp"
#include "tfmod/detail/parallel.hpp"
#include "tfmod/detail/rng.hpp"
#include "tfmod/error.hpp"

#ifndef TFMOD_VERSION
#define TFMOD_VERSION "0.0.0"
#endif

namespace tfmod::cli {

namespace {

struct Outcome {
  Json result;
  bool passed = true;
  std::string csv;
  std::optional<std::string> svg;
};

std::uint64_t seed_of(const Experiment& e) { return e.seed.value_or(0); }

std::string norm_name(NormJob::Norm n) {
  switch (n) {
    case NormJob::Norm::modulation: return "modulation";
    case NormJob::Norm::amalgam: return "amalgam";
    case NormJob::Norm::fourier_lebesgue: return "fourier-lebesgue";
    case NormJob::Norm::lebesgue: return "lebesgue";
  }
  return "unknown";
}

Outcome run_norm(const Experiment& e, const NormJob& job) {
  double value = 0.0;
  Json result{{"norm", norm_name(job.norm)}};
  switch (job.norm) {
    case NormJob::Norm::modulation:
      value = modulation_norm(job.f, ModNormSpec{*job.spec, *job.window});
      result["spec"] = encode(*job.spec);
      break;
    case NormJob::Norm::lebesgue:
      value = iterated_lebesgue_norm(job.f, *job.spec);
      result["spec"] = encode(*job.spec);
      break;
    case NormJob::Norm::amalgam:
      value = amalgam_norm(job.f, job.p, job.q, job.omega, *job.window);
      result["p"] = encode_real(job.p);
      result["q"] = encode_real(job.q);
      result["omega"] = encode(job.omega);
      break;
    case NormJob::Norm::fourier_lebesgue:
      value = fourier_lebesgue_norm(job.f, job.q, job.omega, job.anchor);
      result["q"] = encode_real(job.q);
      result["omega"] = encode(job.omega);
      result["anchor"] = job.anchor;
      break;
  }
  result["value"] = encode_real(value);
  Outcome out{result, std::isfinite(value), "norm,value\n" + norm_name(job.norm) + "," + csv_real(value) + "\n", {}};
  if (e.plot) out.svg = heatmap_svg(stft(job.f, *job.window));
  return out;
}

Outcome run_gabor_dual(const Experiment& e, const GaborDualJob& job) {
  const FrameBounds bounds = frame_bounds(job.sys);
  const DualResult dual = canonical_dual(job.sys, job.tol, job.max_iter);
  GaborSystem full = job.sys.with_dual(dual.dual);
  if (bounds.lower > kFrameTolerance) full = full.with_frame_bounds(bounds);
  std::vector<double> residuals;
  double worst = 0.0;
  for (const SignalNd& f : random_ensemble(e.grid, seed_of(e), job.n_signals)) {
    residuals.push_back(reconstruct(f, full).residual);
    worst = std::max(worst, residuals.back());
  }
  const bool passed = dual.residual <= job.tol && worst <= 1e-9;
  Json result{{"system", encode(full)},
              {"frame_bounds", {{"lower", encode_real(bounds.lower)}, {"upper", encode_real(bounds.upper)}}},
              {"redundancy", job.sys.lattice().redundancy(e.grid)},
              {"cg_iterations", dual.iterations},
              {"cg_residual", encode_real(dual.residual)},
              {"reconstruction_residuals", residuals},
              {"max_reconstruction_residual", encode_real(worst)},
              {"reconstruction_tolerance", 1e-9}};
  std::ostringstream csv;
  csv << "index,re,im\n";
  for (std::size_t i = 0; i < dual.dual.size(); ++i) {
    csv << i << ',' << csv_real(dual.dual[i].real()) << ',' << csv_real(dual.dual[i].imag()) << '\n';
  }
  Outcome out{result, passed, csv.str(), {}};
  if (e.plot) out.svg = heatmap_svg(stft(dual.dual, job.sys.window()));
  return out;
}

Outcome run_conv_sweep(const Experiment& e, const ConvSweepJob& job) {
  std::vector<SweepSummary> summaries;
  for (std::size_t i = 0; i < job.sweeps.size(); ++i) {
    const auto& [est, count] = job.sweeps[i];
    const std::uint64_t seed = detail::mix_seed(seed_of(e), i);
    if (est == "semidiscrete") {
      summaries.push_back(semidiscrete_sweep(seed, count));
    } else if (est == "dilation") {
      summaries.push_back(dilation_sweep(seed, count));
    } else {
      summaries.push_back(wiener_conv_sweep(seed, count));
    }
  }
  std::vector<ConvEstimateReport> semi, dil, wien;
  for (const ConvInstance& inst : job.instances) {
    if (const auto* s = std::get_if<SemidiscreteInstance>(&inst)) {
      semi.push_back(check_semidiscrete_estimate(s->c, s->a, s->f));
    } else if (const auto* d = std::get_if<DilationInstance>(&inst)) {
      dil.push_back(check_dilation_estimate(d->c, d->f));
    } else {
      const auto& w = std::get<WienerInstance>(inst);
      wien.push_back(w.part == 1 ? check_wiener_conv_estimate(w.c, *w.f1, *w.f2)
                                 : check_wiener_conv_estimate(w.c, *w.a, *w.f1));
    }
  }
  if (!semi.empty()) summaries.push_back(summarize("semidiscrete-cases", std::move(semi), kInf));
  if (!dil.empty()) summaries.push_back(summarize("dilation-cases", std::move(dil), kInf));
  if (!wien.empty()) summaries.push_back(summarize("wiener-cases", std::move(wien), kInf));

  Outcome out;
  out.result = Json{{"summaries", Json::array()}};
  std::ostringstream csv;
  csv << "estimate,index,seed,lhs,constant_bound,ratio,passed,descriptor\n";
  for (const SweepSummary& s : summaries) {
    out.result["summaries"].push_back(encode(s));
    out.passed = out.passed && s.passed;
    for (std::size_t i = 0; i < s.reports.size(); ++i) {
      const auto& r = s.reports[i];
      csv << s.estimate << ',' << i << ',' << r.seed << ',' << csv_real(r.lhs) << ',' << csv_real(r.constant_bound)
          << ',' << csv_real(r.ratio) << ',' << (r.passed ? 1 : 0) << ",\"" << r.descriptor << "\"\n";
    }
  }
  out.csv = csv.str();
  return out;
}

std::vector<EquivalenceReport> run_check(const Experiment& e, const Check& c) {
  using T = Check::Type;
  const std::uint64_t seed = seed_of(e);
  std::vector<EquivalenceReport> out;
  switch (c.type) {
    case T::window_independence:
      out.push_back(window_independence_report(seed, c.n_signals, *c.window1, *c.window2, *c.spec1, c.bound));
      break;
    case T::embedding:
      out.push_back(embedding_report(seed, c.n_signals, ModNormSpec{*c.spec1, *c.window1},
                                     ModNormSpec{*c.spec2, *c.window1}, c.tol));
      break;
    case T::gabor_equivalence: {
      const GaborSystem base(*c.window1, *c.lattice);
      GaborSystem sys = base;
      if (c.dual == "tight") {
        const SignalNd tight = canonical_tight(base);
        sys = GaborSystem(tight, *c.lattice, tight);
      } else {
        sys = with_canonical_dual(base);
      }
      auto [w, d] = gabor_equivalence_report(seed, c.n_signals, sys, *c.spec1, c.bound);
      out.push_back(std::move(w));
      out.push_back(std::move(d));
      break;
    }
    case T::wiener_equivalence:
      out.push_back(wiener_equivalence_report(seed, c.n_signals, *c.window1, *c.window2, *c.spec1, c.block, c.bound));
      break;
    case T::compact_support:
      out.push_back(compact_support_report(seed, c.n_signals, *c.compact, c.bound));
      break;
    case T::local_bound:
      out.push_back(local_bound_report(seed, c.n_signals, *c.local));
      break;
    case T::decay_fit: {
      const DecayFit fit = gaussian_decay_fit(e.grid);
      EquivalenceReport r;
      r.name = "decay-fit";
      r.ratios = {fit.r_squared};
      r.bound = kInf;
      finalize(r);
      r.constants["max_eigenvalue"] = fit.max_eigenvalue;
      r.constants["r_squared"] = fit.r_squared;
      r.constants["points"] = static_cast<double>(fit.points);
      r.passed = fit.passed;
      out.push_back(std::move(r));
      break;
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    EquivalenceReport& r = out[i];
    r.info["label"] = out.size() == 1 ? c.label : c.label + "/" + (i == 0 ? "window" : "dual");
    if (c.expected_spread) {
      const double rel = std::abs(r.spread / *c.expected_spread - 1.0);
      r.constants["expected_spread"] = *c.expected_spread;
      r.constants["expected_spread_rel_tol"] = c.rel_tol;
      r.passed = r.passed && rel <= c.rel_tol;
    }
  }
  return out;
}

Outcome run_reports(const Experiment& e, const ReportJob& job) {
  Outcome out;
  out.result = Json{{"reports", Json::array()}};
  std::ostringstream csv;
  csv << "check,index,ratio\n";
  for (const Check& c : job.checks) {
    for (const EquivalenceReport& r : run_check(e, c)) {
      out.result["reports"].push_back(encode(r));
      out.passed = out.passed && r.passed;
      for (std::size_t i = 0; i < r.ratios.size(); ++i) {
        csv << r.info.at("label") << ',' << i << ',' << csv_real(r.ratios[i]) << '\n';
      }
    }
  }
  out.csv = csv.str();
  return out;
}

Outcome execute(const Experiment& e) {
  return std::visit(
      [&](const auto& job) -> Outcome {
        using J = std::decay_t<decltype(job)>;
        if constexpr (std::is_same_v<J, NormJob>) {
          return run_norm(e, job);
        } else if constexpr (std::is_same_v<J, GaborDualJob>) {
          return run_gabor_dual(e, job);
        } else if constexpr (std::is_same_v<J, ConvSweepJob>) {
          return run_conv_sweep(e, job);
        } else {
          return run_reports(e, job);
        }
      },
      e.job);
}

Json document(const Experiment& e, const Outcome& o) {
  return Json{{"schema", kSchemaVersion},
              {"tool", "tfmod"},
              {"version", TFMOD_VERSION},
              {"name", e.name},
              {"kind", to_string(e.kind)},
              {"seed", e.seed ? Json(*e.seed) : Json(nullptr)},
              {"grid", encode(e.grid)},
              {"passed", o.passed},
              {"result", o.result}};
}

bool numerical_failure(const Error& err) {
  return err.code() == ErrorCode::not_a_frame || err.code() == ErrorCode::no_convergence;
}

ExperimentResult run_one(const Experiment& e, const RunOptions& opts) {
  ExperimentResult res{e.name, to_string(e.kind), "passed", "", {}};
  try {
    const Outcome o = execute(e);
    const std::filesystem::path prefix = opts.out_dir / e.output;
    std::filesystem::create_directories(prefix.parent_path());
    auto emit = [&](const std::string& ext, const std::string& content) {
      std::filesystem::path p = prefix;
      p += ext;
      write_atomic(p, content);
      res.outputs.push_back(std::filesystem::relative(p, opts.out_dir).generic_string());
    };
    if (e.format != Format::csv) emit(".json", document(e, o).dump(2) + "\n");
    if (e.format != Format::json) emit(".csv", o.csv);
    if (o.svg) emit(".svg", *o.svg);
    if (!o.passed) res.status = "failed";
  } catch (const Error& err) {
    res.status = numerical_failure(err) ? "failed" : "error";
    res.message = err.what();
  } catch (const std::exception& err) {
    res.status = "error";
    res.message = err.what();
  }
  return res;
}

}  // namespace

Json run_experiment(const Experiment& e, bool& passed) {
  const Outcome o = execute(e);
  passed = o.passed;
  return document(e, o);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string manifest_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0' && v >= 0) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunResult run(const Config& cfg, const RunOptions& opts) {
  std::filesystem::create_directories(opts.out_dir);
  RunResult rr;
  rr.experiments.resize(cfg.experiments.size());
  detail::parallel_for(cfg.experiments.size(), opts.jobs,
                       [&](std::size_t i) { rr.experiments[i] = run_one(cfg.experiments[i], opts); });
  Json list = Json::array();
  for (const ExperimentResult& r : rr.experiments) {
    if (r.status == "error") {
      rr.exit_code = kExitConfig;
    } else if (r.status == "failed" && rr.exit_code == kExitPass) {
      rr.exit_code = kExitFail;
    }
    Json item{{"name", r.name}, {"kind", r.kind}, {"status", r.status}, {"outputs", r.outputs}};
    if (!r.message.empty()) item["message"] = r.message;
    list.push_back(std::move(item));
  }
  const Json manifest{{"schema", kSchemaVersion},
                      {"tool", "tfmod"},
                      {"tool_version", TFMOD_VERSION},
                      {"config_hash", "fnv1a64:" + cfg.hash},
                      {"timestamp", manifest_timestamp()},
                      {"exit_code", rr.exit_code},
                      {"experiments", list}};
  write_atomic(opts.out_dir / "manifest.json", manifest.dump(2) + "\n");
  return rr;
}

int run_command(const std::filesystem::path& config, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  std::optional<std::uint64_t> seed;
  if (const char* env = std::getenv("TFMOD_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || env[0] == '-') {
      err << "config error: TFMOD_SEED must be a non-negative integer\n";
      return kExitConfig;
    }
    seed = v;
  }
  try {
    const Config cfg = load_config(config, seed);
    const RunResult rr = run(cfg, opts);
    for (const ExperimentResult& r : rr.experiments) {
      out << r.status << ' ' << r.kind << ' ' << r.name;
      if (!r.message.empty()) out << ": " << r.message;
      out << '\n';
    }
    return rr.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace tfmod::cli
