#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "splitnorm/error.hpp"
#include "splitnorm_cli/json_io.hpp"

namespace splitnorm::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kInapplicable = 3, kBudgetExceeded = 4 };

int exit_code_for(ErrorCode code);

// Runs one command line (without the program name). Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One batch job. Serializes to the JSON objects found in a batch config's "jobs" array.
struct ExperimentConfig {
    std::string command;                  // "profile", "norm", "class-s", "series", "mult estimate", ...
    std::string spec;                     // function spec, multiplier name or coefficient file
    std::optional<double> p;
    std::vector<std::string> t;           // explicit t values
    std::optional<std::string> t_range;   // "lo,hi,count" (norm) or "lo,hi" (series)
    std::optional<std::string> engine;    // exact | numeric | both
    std::optional<std::string> output;
    std::optional<std::uint64_t> seed;
    std::optional<double> error_target;
    std::vector<std::string> extra;       // further raw arguments

    std::vector<std::string> to_args() const;
    json to_json() const;
    static ExperimentConfig from_json(const json& j);
};

// Decimal ("0.25", "-1.5") or integer-ratio text to an exact rational.
Rat parse_exact(const std::string& text);

}  // namespace splitnorm::cli
