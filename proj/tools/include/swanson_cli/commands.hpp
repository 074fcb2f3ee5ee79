#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swanson/error.hpp"
#include "swanson_cli/config.hpp"

namespace swanson::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitNonConvergent = 3;
inline constexpr int kExitVerifyFailed = 4;

int exit_code_for(Errc code);

struct CommandResult {
    int exit_code = kExitOk;
    std::string body;
    std::vector<std::string> warnings;
};

struct ReportEntry {
    std::string id;
    bool pass_class = true;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string status;  ///< PASS, FAIL or REPORTED
    std::string note;
};

struct VerificationReport {
    std::vector<ReportEntry> entries;
    bool ok() const;
    const ReportEntry* find(const std::string& id) const;
};

VerificationReport build_verification(const RunConfig& cfg);

CommandResult cmd_solve(const RunConfig& cfg);
CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_wavefunctions(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// %.17g, the CSV number format.
std::string fmt(double v);

} // namespace swanson::cli
