#pragma once

#include "covkit/cli/json_io.hpp"
#include "covkit/cli/scenario.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace covkit::cli {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum ExitCode : int { kExitPass = 0, kExitToleranceFailure = 1, kExitConfigError = 2 };

struct RunOptions {
    unsigned threads = 0;            ///< 0 = implementation default
    std::string report_path;         ///< overrides output.report; empty = scenario value or stdout
    std::vector<std::string> overrides;
};

struct RunResult {
    Json report;
    bool pass = false;
};

/// Executes the checks of a parsed scenario. Field dumps requested by the
/// scenario are written to `dump_path` when it is non-empty. Library errors
/// propagate as covkit::Error.
RunResult execute(const Scenario& scenario, unsigned threads, const std::string& dump_path = {});

/// Full `run` command: load, override, validate, execute, write. Returns
/// the exit code; diagnostics go to `err`, the report to its file or `out`.
int run_command(const std::string& scenario_path, const RunOptions& options, std::ostream& out, std::ostream& err);

/// Removes the fields that legitimately differ between runs (timings, timestamp).
Json strip_volatile(Json report);

}  // namespace covkit::cli
