#pragma once

// JSON encoding of the library types and CSV rows for reports.
//
// Infinite exponents are written as the string "inf"; permutations are
// written 1-based. Non-finite report values are written as "inf", "-inf" or
// "nan". decode_* functions throw Error(parse_error) with the offending path.

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "tfmod/convolution.hpp"
#include "tfmod/gabor.hpp"
#include "tfmod/grid.hpp"
#include "tfmod/mixed_norms.hpp"
#include "tfmod/modspace.hpp"
#include "tfmod/weights.hpp"

namespace tfmod {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "v1";

Json encode_real(double x);
double decode_real(const Json& j, const std::string& path = "$");
/// Exponent in (0, inf]: a positive number or "inf".
double decode_exponent(const Json& j, const std::string& path = "$");

Json encode(const GridSpec& grid);
Json encode(const Weight& w);
Json encode(const ExponentVector& p);
Json encode_permutation(const Permutation& sigma);
Json encode(const MixedNormSpec& spec);
Json encode(const LatticeSpec& lattice);
Json encode(const SignalNd& f);
Json encode(const GaborSystem& sys);
Json encode(const EquivalenceReport& report);
Json encode(const ConvEstimateReport& report);
Json encode(const SweepSummary& summary);

GridSpec decode_grid(const Json& j, const std::string& path = "$");
Weight decode_weight(const Json& j, const std::string& path = "$");
ExponentVector decode_exponents(const Json& j, const std::string& path = "$");
/// 1-based array to a 0-based permutation of {0, ..., dim-1}.
Permutation decode_permutation(const Json& j, std::size_t dim, const std::string& path = "$");
/// Missing "sigma", "omega" or "step" take their defaults.
MixedNormSpec decode_mixed_norm_spec(const Json& j, const std::string& path = "$");
LatticeSpec decode_lattice(const Json& j, const std::string& path = "$");
SignalNd decode_signal(const Json& j, const std::string& path = "$");
GaborSystem decode_gabor_system(const Json& j, const std::string& path = "$");

/// "%.17g" formatting used by every CSV writer.
std::string csv_real(double x);
/// Header plus one row per signal: index,ratio.
void write_csv(std::ostream& out, const EquivalenceReport& report);
/// Header plus one row per instance.
void write_csv(std::ostream& out, const SweepSummary& summary);

}  // namespace tfmod
