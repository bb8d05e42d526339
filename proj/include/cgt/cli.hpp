#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cgt::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid_input = 1;
inline constexpr int exit_bound_exceeded = 2;

// args excludes the program name. Tables go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cgt::cli
