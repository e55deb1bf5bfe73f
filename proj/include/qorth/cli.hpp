#pragma once

#include "qorth/pipeline.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace qorth::cli {

enum class Command { Moments, Recurrence, LadderCheck, Painleve, Verify };
enum class Format { Csv, Json };

std::string_view to_string(Command command);
Command command_from_string(std::string_view name);

struct RunConfig {
    Command command = Command::Verify;
    WeightChoice weight;
    unsigned N = 10;
    unsigned digits = 50;
    Format format = Format::Csv;
    std::optional<std::string> spec_path;  ///< read into weight.spec_json by run()
    std::optional<std::string> out_path;
    std::optional<std::string> tol;        ///< overrides every derived tolerance
};

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitToleranceFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSingular = 3;

struct RunResult {
    int exit_code = kExitOk;
    std::string output;       ///< the emitted artifact (CSV or JSON)
    std::string diagnostics;  ///< human-readable notes for stderr
};

/// Executes one command. Never throws for user errors; they map to exit codes.
/// Writes `output` to out_path when set.
RunResult run(RunConfig config);

}  // namespace qorth::cli
