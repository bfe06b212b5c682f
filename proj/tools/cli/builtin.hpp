#pragma once

#include <iosfwd>

namespace tfmod::cli {

/// Shipped self-check suite at reduced scale: oracle agreement, Moyal,
/// reconstruction, convolution sweeps and the modulation-space reports.
/// Prints one PASS/FAIL line per check; returns the run exit code.
int run_builtin_suite(std::ostream& out);

}  // namespace tfmod::cli
