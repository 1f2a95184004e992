#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grl::cli {

inline constexpr const char* kSchema = "grl/1";
inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 all checks passed, 1 a check failed, 2 input or
// configuration error. The report goes to --out or `out`; diagnostics and
// usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace grl::cli
