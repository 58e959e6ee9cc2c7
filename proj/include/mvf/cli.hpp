#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mvf {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on a computation error or failed verification, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvf
