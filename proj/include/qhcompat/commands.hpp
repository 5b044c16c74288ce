#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "qhcompat/tolerances.hpp"

namespace qhcompat::cli {

inline constexpr const char* kToolName = "qhcompat";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kCompatible = 0, kIncompatible = 1, kError = 2, kBorderline = 3 };

struct CommandResult {
    int exit_code = kError;
    nlohmann::json report;
};

CommandResult cmd_check(const std::filesystem::path& matrix_path,
                        const std::optional<std::filesystem::path>& theta_path,
                        const Tolerances& tol);

CommandResult cmd_compat(const std::vector<std::filesystem::path>& paths, bool with_oracle,
                         const Tolerances& tol);

CommandResult cmd_gen(long n, std::uint64_t seed, const std::filesystem::path& out_dir,
                      const std::optional<std::array<double, 4>>& ansatz, long count,
                      const Tolerances& tol);

CommandResult cmd_example(double s, double a, const Tolerances& tol);

/// Full command-line entry point. Reports go to `out` as JSON; error reports
/// go to `err` only. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qhcompat::cli
