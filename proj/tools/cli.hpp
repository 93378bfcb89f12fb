#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liplab::cli {

// Runs one command line. Exit codes: 0 success, 1 validation or usage
// failure, 2 runtime failure.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liplab::cli
