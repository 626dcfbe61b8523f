// Command-line front end: runs scenario files through the classification,
// duality and K-theory pipelines.
//
// Exit codes: 0 success, 2 validation/parse error, 3 symbolic result
// (unevaluated K-theory or a noncommutative corner).

#include <CLI11.hpp>

#include "tdual/report.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>

namespace {

using tdual::cli::Report;

struct Options {
    std::string scenario;
    std::string batch;
    std::string format = "text";
    bool trace = false;
};

int emit(const Report& report, const Options& opt) {
    if (opt.format == "json") {
        std::cout << report.to_json(opt.trace).dump(2) << "\n";
    } else if (opt.format == "dot") {
        if (report.diamond)
            std::cout << tdual::cli::render_diamond(*report.diamond, "dot");
        else
            std::cout << report.text(opt.trace);
    } else {
        std::cout << report.text(opt.trace);
    }
    return report.exit_code;
}

int run_one(const std::string& path, const Options& opt, bool validate_only) {
    Report report = validate_only ? tdual::cli::run_validation(path)
                                  : tdual::cli::run_scenario_file(path);
    return emit(report, opt);
}

int run(const Options& opt, const std::string& expected_command, bool validate_only) {
    if (!opt.batch.empty()) {
        std::vector<std::string> files;
        for (const auto& entry : std::filesystem::directory_iterator(opt.batch))
            if (entry.path().extension() == ".json") files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());
        int worst = 0;
        for (const std::string& f : files) {
            std::cout << "--- " << f << "\n";
            worst = std::max(worst, run_one(f, opt, validate_only));
        }
        return worst;
    }
    if (opt.scenario.empty()) {
        std::cerr << "error: provide --scenario <file> or --batch <dir>\n";
        return tdual::cli::kExitValidation;
    }
    if (!validate_only && !expected_command.empty()) {
        // the subcommand must match the scenario's own command
        try {
            tdual::cli::Scenario s = tdual::cli::load_scenario(opt.scenario);
            if (tdual::cli::command_str(s.command) != expected_command) {
                std::cerr << "error: scenario file runs '"
                          << tdual::cli::command_str(s.command) << "' but the subcommand is '"
                          << expected_command << "'\n";
                return tdual::cli::kExitValidation;
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return tdual::cli::kExitValidation;
        }
    }
    return run_one(opt.scenario, opt, validate_only);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classification, T-duality diamonds and operator K-theory for "
                 "bundles of strongly self-absorbing C*-algebras over finite spaces"};
    app.require_subcommand(1);

    Options opt;
    std::string picked;
    bool validate_only = false;
    for (const std::string& name :
         {"classify", "tdualize", "ktheory", "simplify", "cohomology", "validate"}) {
        CLI::App* sub = app.add_subcommand(
            name, name == "validate" ? "report validation findings without executing"
                                     : "run a scenario through the " + name + " pipeline");
        sub->add_option("--scenario", opt.scenario, "scenario file (JSON)");
        sub->add_option("--batch", opt.batch, "directory of scenario files");
        sub->add_option("--format", opt.format, "text | json | dot")
            ->check(CLI::IsMember({"text", "json", "dot"}));
        sub->add_flag("--trace", opt.trace, "include the derivation trace");
        sub->callback([&picked, &validate_only, name] {
            picked = name;
            validate_only = name == "validate";
        });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        return run(opt, validate_only ? "" : picked, validate_only);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
