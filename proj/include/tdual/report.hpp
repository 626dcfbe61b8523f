#pragma once

#include "tdual/ktheory.hpp"
#include "tdual/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tdual::cli {

// Exit codes of the whole pipeline.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSymbolic = 3; // result is unevaluated / noncommutative

struct TraceLine {
    std::string step;
    std::string citation;
};

struct Report {
    json scenario_echo;
    std::string command;
    int exit_code = kExitOk;
    std::vector<std::string> results;
    std::vector<std::string> warnings;
    std::vector<TraceLine> trace;
    std::optional<calg::Diamond> diamond;

    std::string text(bool with_trace) const;
    json to_json(bool with_trace) const;
};

// Executes the scenario's own command. Parse and validation failures come
// back as a report with exit code 2 (never as an exception).
Report run_scenario(const Scenario& s);
Report run_scenario_file(const std::string& path);

// Diagnostics-only pipeline for the validate subcommand.
Report run_validation(const std::string& path);

// ASCII and dot renderings of the diamond; byte-stable for golden tests.
std::string render_diamond(const calg::Diamond& d, const std::string& format);

} // namespace tdual::cli
