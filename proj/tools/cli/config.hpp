#pragma once

// Experiment configuration: JSON text -> validated, fully decoded jobs.
//
// A config file is either one experiment object or {"experiments": [...]}.
// Every kind-specific field is decoded here, so a run never starts on a
// config that cannot be executed.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tfmod/convolution.hpp"
#include "tfmod/gabor.hpp"
#include "tfmod/modspace.hpp"
#include "tfmod/serialize.hpp"

namespace tfmod::cli {

/// Bad config: malformed JSON (with line and column), unknown kind, missing
/// or invalid fields.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Kind { norm, gabor_dual, conv_sweep, verify_suite, report };
enum class Format { csv, json, both };

std::string to_string(Kind kind);

inline constexpr std::size_t kDefaultMaxDim = 3;

struct NormJob {
  enum class Norm { modulation, amalgam, fourier_lebesgue, lebesgue };
  Norm norm = Norm::modulation;
  SignalNd f;
  std::optional<SignalNd> window{};
  std::optional<MixedNormSpec> spec{};
  double p = 1.0;
  double q = 1.0;
  Weight omega = Weight::constant(1);
  std::vector<double> anchor{};
};

struct GaborDualJob {
  GaborSystem sys;
  double tol = 1e-12;
  std::size_t max_iter = 1000;
  std::size_t n_signals = 20;
};

struct SemidiscreteInstance {
  SemidiscreteCase c;
  SequenceNd a;
  SignalNd f;
};

struct DilationInstance {
  DilationCase c;
  SignalNd f;
};

struct WienerInstance {
  WienerConvCase c;
  int part = 1;
  std::optional<SignalNd> f1, f2;
  std::optional<SequenceNd> a;
};

using ConvInstance = std::variant<SemidiscreteInstance, DilationInstance, WienerInstance>;

struct ConvSweepJob {
  /// Randomized builtin sweeps: (estimate, count); estimate in
  /// {"semidiscrete", "dilation", "wiener"}.
  std::vector<std::pair<std::string, std::size_t>> sweeps;
  /// Explicit instances, reported as one extra summary per estimate.
  std::vector<ConvInstance> instances;
};

struct Check {
  enum class Type {
    window_independence,
    embedding,
    gabor_equivalence,
    wiener_equivalence,
    compact_support,
    local_bound,
    decay_fit
  };
  Type type = Type::embedding;
  std::string label;
  std::size_t n_signals = 50;
  double bound = kDefaultSpreadBound;
  double tol = 1e-10;
  std::optional<SignalNd> window1, window2;
  std::optional<MixedNormSpec> spec1, spec2;
  std::optional<LatticeSpec> lattice;
  /// gabor-equivalence: "canonical" dual, or "tight" (window replaced by
  /// the canonical tight window).
  std::string dual = "canonical";
  std::vector<std::size_t> block;
  std::optional<CompactSupportCase> compact;
  std::optional<LocalBoundCase> local;
  /// Regression pin: passed also requires |spread / expected - 1| <= rel_tol.
  std::optional<double> expected_spread;
  double rel_tol = 0.1;
};

std::string to_string(Check::Type type);

struct ReportJob {
  std::vector<Check> checks;
};

using Job = std::variant<ReportJob, NormJob, GaborDualJob, ConvSweepJob>;

struct Experiment {
  std::string name;
  Kind kind = Kind::norm;
  GridSpec grid{{2}};
  std::optional<std::uint64_t> seed;
  std::string output;
  Format format = Format::json;
  bool plot = false;
  Job job;
};

struct Config {
  std::vector<Experiment> experiments;
  /// FNV-1a 64 of the raw config bytes, as 16 hex digits.
  std::string hash;
};

/// Parses and validates; `seed_override` replaces every experiment seed.
Config parse_config(std::string_view text, std::optional<std::uint64_t> seed_override = {});
Config load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override = {});

/// JSON Schema (draft 2020-12) of the config format.
const char* config_schema();

std::string fnv1a_hex(std::string_view bytes);

}  // namespace tfmod::cli
