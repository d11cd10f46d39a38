#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fidelipart {

/// Exit status: 0 success, 1 usage / input / solver error, 2 gate-count
/// validation failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInvalid = 2;

/// Environment variable naming the external solver binary.
inline constexpr const char* kSolverEnv = "FIDELIPART_SOLVER";

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fidelipart
