#pragma once

#include <ostream>
#include <span>
#include <string>

namespace ocsm::cli {

/// Runs one `ocsm` command; `args` excludes the program name. Reports go to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
/// Exit status: 0 ok, 1 runtime error, 2 usage error, 3 infeasible k.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ocsm::cli
