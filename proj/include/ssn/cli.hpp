#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ssn {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 all checks passed, 2 a tolerance check failed, 1 error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace ssn
