#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gridfreq::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
/// Exit codes: 0 success, 1 parse/validation/usage, 2 infeasible start,
/// 3 numerical failure. Errors are reported as one JSON object on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gridfreq::cli
