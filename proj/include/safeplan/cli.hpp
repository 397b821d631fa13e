#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace safeplan {

/// Command-line front end. Exit codes: 0 success, 1 findings (unrealizable
/// spec, failed verification, safety violations), 2 usage/parse/IO errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace safeplan
