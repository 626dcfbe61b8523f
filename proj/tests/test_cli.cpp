#include <doctest.h>

#include "tdual/errors.hpp"
#include "tdual/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tdual;
using namespace tdual::cli;

namespace {

namespace fs = std::filesystem;

const fs::path kRoot = TDUAL_SOURCE_DIR;

std::vector<fs::path> scenario_files() {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(kRoot / "scenarios"))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("scenario round trip: the echo re-parses to an equivalent scenario") {
    for (const auto& path : scenario_files()) {
        CAPTURE(path.string());
        Scenario first = load_scenario(path.string());
        Scenario second = parse_scenario(first.to_json());
        CHECK(first.to_json() == second.to_json());
        CHECK(first.space == second.space);
        CHECK(first.fiber == second.fiber);
        CHECK(first.cls == second.cls);
        CHECK(first.actions.size() == second.actions.size());
    }
}

TEST_CASE("reports are byte-stable across runs and match the golden files") {
    for (const auto& path : scenario_files()) {
        CAPTURE(path.string());
        Report a = run_scenario_file(path.string());
        Report b = run_scenario_file(path.string());
        CHECK(a.text(true) == b.text(true));
        CHECK(a.to_json(true) == b.to_json(true));

        fs::path golden = kRoot / "tests" / "golden" / (path.stem().string() + ".txt");
        REQUIRE_MESSAGE(fs::exists(golden), "missing golden file ", golden.string());
        CHECK(a.text(true) == slurp(golden));
    }
}

TEST_CASE("exit code contract") {
    auto code = [](const std::string& name) {
        return run_scenario_file((kRoot / "scenarios" / name).string()).exit_code;
    };
    CHECK(code("car_classify.json") == kExitOk);
    CHECK(code("car_tdualize.json") == kExitOk);
    CHECK(code("jiangsu_circle_simplify.json") == kExitOk);
    CHECK(code("rp2_cohomology.json") == kExitOk);
    // symbolic outcomes: torsion corners stay crossed products, the mapping
    // torus constant is an unevaluated K-theory marker
    CHECK(code("torsion_tdualize.json") == kExitSymbolic);
    CHECK(code("dean_rational_ktheory.json") == kExitSymbolic);

    // parse and validation failures
    CHECK(run_scenario_file("/nonexistent/file.json").exit_code == kExitValidation);
    fs::path bad = fs::temp_directory_path() / "tdual_bad_scenario.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run_scenario_file(bad.string()).exit_code == kExitValidation);
    std::ofstream(bad) << R"({"command": "classify", "space": "S1", "fiber": "E8"})";
    CHECK(run_scenario_file(bad.string()).exit_code == kExitValidation);
    std::ofstream(bad) << R"({"command": "classify", "space": "S1", "fiber": "UHF:ALL"})";
    CHECK(run_scenario_file(bad.string()).exit_code == kExitValidation);
    // class component in a nonexistent degree
    std::ofstream(bad)
        << R"({"command": "classify", "space": "S1", "fiber": "UHF:2", "class": {"5": [1]}})";
    CHECK(run_scenario_file(bad.string()).exit_code == kExitValidation);
    fs::remove(bad);
}

TEST_CASE("parse errors carry line and column information") {
    fs::path bad = fs::temp_directory_path() / "tdual_bad_json.json";
    std::ofstream(bad) << "{\n  \"command\": classify\n}";
    Report r = run_scenario_file(bad.string());
    CHECK(r.exit_code == kExitValidation);
    REQUIRE_FALSE(r.results.empty());
    CHECK(r.results.front().find("line") != std::string::npos);
    CHECK(r.results.front().find("column") != std::string::npos);
    fs::remove(bad);
}

TEST_CASE("validate: diagnostics without execution") {
    // a well-formed golden scenario is clean
    Report clean = run_validation((kRoot / "scenarios" / "car_tdualize.json").string());
    CHECK(clean.exit_code == kExitOk);

    // a Rokhlin-dimension-0 integer action on a Jiang-Su fiber is rejected
    fs::path bad = fs::temp_directory_path() / "tdual_validate.json";
    std::ofstream(bad) << R"({
      "command": "tdualize", "space": "S1", "fiber": "Z",
      "actions": [ {"group": "Z", "kind": "translation",
                    "spectrum_fixing": true, "rokhlin_dimension": 0} ]
    })";
    Report rejected = run_validation(bad.string());
    CHECK(rejected.exit_code == kExitValidation);
    bool cited = false;
    for (const auto& line : rejected.results)
        if (line.find("Rokhlin dimension 0") != std::string::npos ||
            line.find("dimension <= 1") != std::string::npos)
            cited = true;
    CHECK(cited);
    fs::remove(bad);
}

TEST_CASE("diamond renderings") {
    Report car = run_scenario_file((kRoot / "scenarios" / "car_tdualize.json").string());
    REQUIRE(car.diamond.has_value());
    std::string text = render_diamond(*car.diamond, "text");
    CHECK(text.find("C  (top)    = C(S1) (x) O2 (x) K") != std::string::npos);
    CHECK(text.find("D# (right)  = O2 (x) K") != std::string::npos);

    std::string dot = render_diamond(*car.diamond, "dot");
    CHECK(dot.find("digraph TDualityDiamond") != std::string::npos);
    CHECK(dot.find("top [label=\"C(S1) (x) O2 (x) K\"]") != std::string::npos);
    CHECK(dot.find("top -> left") != std::string::npos);
    CHECK(dot.find("right -> bottom") != std::string::npos);
    CHECK(render_diamond(*car.diamond, "dot") == dot); // stable

    Report torsion =
        run_scenario_file((kRoot / "scenarios" / "torsion_tdualize.json").string());
    REQUIRE(torsion.diamond.has_value());
    std::string torsion_text = render_diamond(*torsion.diamond, "text");
    CHECK(torsion_text.find("TorsionClass") != std::string::npos);
    CHECK(torsion_text.find("B^alpha") != std::string::npos);
    CHECK(torsion_text.find("theta#") != std::string::npos);

    Report flow =
        run_scenario_file((kRoot / "scenarios" / "o2_bundle_flow_tdualize.json").string());
    REQUIRE(flow.diamond.has_value());
    CHECK(render_diamond(*flow.diamond, "dot").find("unique up to cocycle conjugacy") !=
          std::string::npos);

    CHECK_THROWS_AS(render_diamond(*car.diamond, "svg"), ValidationError);
}

TEST_CASE("group parser round trips the printer") {
    for (const std::string& name :
         {"0", "Z", "Z^3", "Z/4", "Z[1/2]", "Z[1/6]^2", "Q", "Z^2 + Z/2 + Z/6"}) {
        CAPTURE(name);
        CHECK(parse_group(name).str() == name);
    }
    CHECK_THROWS_AS(parse_group("F_2"), ValidationError);
}
