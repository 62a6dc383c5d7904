#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wave_nonuniq::cli {

enum ExitCode : int {
  kPass = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kStabilityError = 3,
};

/// Environment variable that overrides the default comparison tolerance.
inline constexpr const char* kToleranceEnv = "WAVE_NONUNIQ_TOL";

/// Runs `wave-nonuniq <construct|simulate|verify> ...`; args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wave_nonuniq::cli
