#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzy::cli {

/// Runs one CLI invocation (args exclude the program name). Payloads go to
/// `out` unless --out is given; diagnostics go to `err`. Exit codes: 0 ok,
/// 1 invalid configuration, 2 quadrature non-convergence, 3 failed criteria.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzy::cli
