#pragma once

#include "tdual/diamond.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tdual::cli {

using nlohmann::json;

enum class Command { Classify, TDualize, KTheory, Simplify, Cohomology };

Command parse_command(const std::string& name);
std::string command_str(Command c);

struct ActionSpec {
    calg::CrossedGroup group = calg::CrossedGroup::Z;
    calg::ActionDescriptor descriptor;
};

// One fully resolved scenario file. Class components are checked against the
// classification group of (space, fiber) at parse time.
struct Scenario {
    Command command = Command::Classify;
    topology::Space space;
    catalog::SSAlgebra fiber;
    calg::CharClass cls;
    std::vector<ActionSpec> actions;
    int degree = 0;                                 // cohomology
    std::optional<abgroup::SLocalGroup> coefficients; // cohomology

    // Canonical serialization; parsing it back yields an equivalent scenario.
    json to_json() const;
};

Scenario parse_scenario(const json& j);
Scenario load_scenario(const std::string& path); // throws ValidationError with location info

// Group names in scenario files and reports: "0", "Z", "Z^2", "Z/4",
// "Z[1/6]^2 + Z/3", "Q".
abgroup::SLocalGroup parse_group(const std::string& text);

topology::Space parse_space(const json& spec);
json space_to_json(const topology::Space& x);

// The expression a scenario denotes: the bundle algebra with the listed
// crossed products applied in order.
calg::CstarExpr scenario_expression(const Scenario& s);

// All validation findings, without executing the pipeline.
calg::Diagnostics validate_scenario(const Scenario& s);

} // namespace tdual::cli
