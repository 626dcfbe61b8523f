#include "tdual/report.hpp"

#include "tdual/errors.hpp"

#include <sstream>

namespace tdual::cli {

using calg::CstarExpr;
using calg::Diamond;
using calg::ExprKind;

namespace {

void append_rewrite_trace(Report& r, const std::vector<calg::RewriteStep>& steps) {
    for (const auto& s : steps)
        r.trace.push_back({s.rule + ": " + s.before + "  ~>  " + s.after, s.citation});
}

void append_k_trace(Report& r, const std::vector<ktheory::KStep>& steps) {
    for (const auto& s : steps) r.trace.push_back({s.rule + ": " + s.detail, s.citation});
}

void run_classify(const Scenario& s, Report& r) {
    calg::ClassifyResult c = calg::classify_bundles(s.space, s.fiber);
    r.results.push_back("classification group of (" + s.space.str() + ", " + s.fiber.str() +
                        ") bundles, one factor per degree:");
    for (const auto& [degree, group] : c.factors)
        r.results.push_back("degree " + std::to_string(degree) + ": " + group.str());
    r.warnings.insert(r.warnings.end(), c.warnings.begin(), c.warnings.end());
}

void run_simplify(const Scenario& s, Report& r) {
    calg::SimplifyResult res = calg::simplify_traced(scenario_expression(s));
    r.results.push_back("normal form: " + res.expr.str());
    topology::Space spectrum = calg::prim(res.expr);
    r.results.push_back("primitive spectrum: " + spectrum.str());
    append_rewrite_trace(r, res.trace);
    if (!calg::is_bundle_form(res.expr) || !spectrum.is_commutative())
        r.exit_code = kExitSymbolic;
}

void run_ktheory(const Scenario& s, Report& r) {
    CstarExpr expr = scenario_expression(s);
    calg::SimplifyResult res = calg::simplify_traced(expr);
    ktheory::KResult k = ktheory::k_of_expr(res.expr);
    r.results.push_back("normal form: " + res.expr.str());
    append_rewrite_trace(r, res.trace);
    if (k.evaluated()) {
        r.results.push_back("K0: " + k.value->k0.str());
        r.results.push_back("K1: " + k.value->k1.str());
    } else {
        r.results.push_back("K-theory unevaluated: " + k.unevaluated_reason);
        r.exit_code = kExitSymbolic;
    }
    append_k_trace(r, k.trace);
    r.warnings.insert(r.warnings.end(), k.warnings.begin(), k.warnings.end());
}

void describe_k(Report& r, const std::string& corner, const CstarExpr& e) {
    ktheory::KResult k = ktheory::k_of_expr(e);
    if (k.evaluated())
        r.results.push_back("K(" + corner + ") = " + k.value->str());
    r.warnings.insert(r.warnings.end(), k.warnings.begin(), k.warnings.end());
}

void run_tdualize(const Scenario& s, Report& r) {
    if (s.fiber.kind() == catalog::AlgebraKind::Complex) {
        // classical continuous-trace case
        calg::MRDual dual =
            calg::mathai_rosenberg_dual(CstarExpr::bundle(s.space, s.fiber, s.cls));
        r.results.push_back("dual space: " + dual.dual_space.str());
        r.results.push_back("dual bundle class (degree 2 on the base): (" + [&] {
            std::string out;
            for (std::size_t i = 0; i < dual.dual_chern.components.size(); ++i)
                out += (i ? "," : "") + dual.dual_chern.components[i].get_str();
            return out;
        }() + ") in " + dual.dual_chern.group.str());
        if (dual.dual_flux)
            r.results.push_back("dual flux: (" + [&] {
                std::string out;
                for (std::size_t i = 0; i < dual.dual_flux->components.size(); ++i)
                    out += (i ? "," : "") + dual.dual_flux->components[i].get_str();
                return out;
            }() + ") in " + dual.dual_flux->group.str());
        for (const std::string& c : dual.constraints)
            r.results.push_back("dual flux constraint: " + c);
        return;
    }

    calg::DualizeActions actions;
    for (const ActionSpec& a : s.actions) {
        switch (a.group) {
            case calg::CrossedGroup::Z:
                if (!actions.z_action) actions.z_action = a.descriptor;
                break;
            case calg::CrossedGroup::S1:
                if (!actions.circle_action) actions.circle_action = a.descriptor;
                break;
            case calg::CrossedGroup::R:
                if (!actions.r_action) actions.r_action = a.descriptor;
                break;
            default:
                break;
        }
    }
    Diamond d = calg::t_dualize(CstarExpr::bundle(s.space, s.fiber, s.cls), actions);
    r.results.push_back(render_diamond(d, "text"));
    describe_k(r, "left", d.left);
    describe_k(r, "right", d.right);
    describe_k(r, "bottom", d.bottom);
    r.warnings.insert(r.warnings.end(), d.notes.begin(), d.notes.end());
    append_rewrite_trace(r, d.trace);
    r.diamond = std::move(d);
    const Diamond& dd = *r.diamond;
    if (!calg::is_bundle_form(dd.top) || !calg::is_bundle_form(dd.right) ||
        !calg::is_bundle_form(dd.bottom))
        r.exit_code = kExitSymbolic;
}

void run_cohomology(const Scenario& s, Report& r) {
    abgroup::SLocalGroup g = topology::cohomology(s.space, s.degree, *s.coefficients);
    r.results.push_back("H^" + std::to_string(s.degree) + "(" + s.space.str() + "; " +
                        s.coefficients->str() + ") = " + g.str());
}

} // namespace

Report run_scenario(const Scenario& s) {
    Report r;
    r.scenario_echo = s.to_json();
    r.command = command_str(s.command);
    try {
        switch (s.command) {
            case Command::Classify: run_classify(s, r); break;
            case Command::Simplify: run_simplify(s, r); break;
            case Command::KTheory: run_ktheory(s, r); break;
            case Command::TDualize: run_tdualize(s, r); break;
            case Command::Cohomology: run_cohomology(s, r); break;
        }
    } catch (const InternalError&) {
        throw;
    } catch (const std::exception& e) {
        r.exit_code = kExitValidation;
        r.results.push_back(std::string("error: ") + e.what());
    }
    return r;
}

Report run_scenario_file(const std::string& path) {
    try {
        return run_scenario(load_scenario(path));
    } catch (const std::exception& e) {
        Report r;
        r.command = "error";
        r.exit_code = kExitValidation;
        r.results.push_back(std::string("error: ") + e.what());
        return r;
    }
}

Report run_validation(const std::string& path) {
    Report r;
    r.command = "validate";
    try {
        Scenario s = load_scenario(path);
        r.scenario_echo = s.to_json();
        calg::Diagnostics d = validate_scenario(s);
        if (d.items.empty()) r.results.push_back("no findings");
        for (const auto& item : d.items) {
            std::string severity = item.severity == calg::Severity::Error ? "error"
                                   : item.severity == calg::Severity::Warning ? "warning"
                                                                              : "note";
            r.results.push_back(severity + ": " + item.message +
                                (item.citation.empty() ? "" : " [" + item.citation + "]"));
        }
        if (!d.ok()) r.exit_code = kExitValidation;
    } catch (const std::exception& e) {
        r.exit_code = kExitValidation;
        r.results.push_back(std::string("error: ") + e.what());
    }
    return r;
}

std::string Report::text(bool with_trace) const {
    std::ostringstream os;
    os << "== " << command << " ==\n";
    if (!scenario_echo.is_null()) os << "scenario: " << scenario_echo.dump() << "\n";
    for (const std::string& line : results) os << line << "\n";
    for (const std::string& w : warnings) os << "warning: " << w << "\n";
    if (with_trace && !trace.empty()) {
        os << "derivation:\n";
        for (const TraceLine& t : trace) {
            os << "  - " << t.step;
            if (!t.citation.empty()) os << " [" << t.citation << "]";
            os << "\n";
        }
    }
    os << "exit: " << exit_code << "\n";
    return os.str();
}

json Report::to_json(bool with_trace) const {
    json j;
    j["command"] = command;
    j["scenario"] = scenario_echo;
    j["results"] = results;
    j["warnings"] = warnings;
    j["exit_code"] = exit_code;
    if (with_trace) {
        json t = json::array();
        for (const TraceLine& line : trace)
            t.push_back({{"step", line.step}, {"citation", line.citation}});
        j["trace"] = t;
    }
    if (diamond) {
        const Diamond& d = *diamond;
        json dj;
        dj["branch"] = calg::branch_str(d.branch);
        dj["top"] = d.top.str();
        dj["left"] = d.left.str();
        dj["right"] = d.right.str();
        dj["bottom"] = d.bottom.str();
        dj["unique_up_to_cocycle_conjugacy"] = d.unique_up_to_cocycle_conjugacy;
        if (d.trace_parameter) dj["trace_parameter"] = to_string(*d.trace_parameter);
        json arrows = json::array();
        for (const auto& a : d.arrows)
            arrows.push_back({{"from", a.from}, {"to", a.to}, {"label", a.label}});
        dj["arrows"] = arrows;
        j["diamond"] = dj;
    }
    return j;
}

std::string render_diamond(const Diamond& d, const std::string& format) {
    if (format == "dot") {
        std::ostringstream os;
        os << "digraph TDualityDiamond {\n";
        os << "  label=\"branch: " << calg::branch_str(d.branch);
        if (d.trace_parameter) os << "; trace parameter " << to_string(*d.trace_parameter);
        os << "\";\n";
        os << "  top [label=\"" << d.top.str() << "\"];\n";
        os << "  left [label=\"" << d.left.str() << "\"];\n";
        os << "  right [label=\"" << d.right.str()
           << (d.unique_up_to_cocycle_conjugacy ? " (unique up to cocycle conjugacy)" : "")
           << "\"];\n";
        os << "  bottom [label=\"" << d.bottom.str() << "\"];\n";
        for (const auto& a : d.arrows)
            os << "  " << a.from << " -> " << a.to << " [label=\"" << a.label << "\"];\n";
        os << "}\n";
        return os.str();
    }
    if (format != "text")
        throw ValidationError("render_diamond: unknown format '" + format + "'");
    std::ostringstream os;
    os << "T-duality diamond (branch: " << calg::branch_str(d.branch) << ")\n";
    os << "        [C]\n";
    os << "       /   \\\n";
    os << "    [D]     [D#]\n";
    os << "       \\   /\n";
    os << "        [B]\n";
    os << "  C  (top)    = " << d.top.str() << "\n";
    os << "  D  (left)   = " << d.left.str() << "\n";
    os << "  D# (right)  = " << d.right.str();
    if (d.unique_up_to_cocycle_conjugacy) os << "   [unique up to cocycle conjugacy]";
    os << "\n";
    os << "  B  (bottom) = " << d.bottom.str() << "\n";
    for (const auto& a : d.arrows)
        os << "  arrow " << a.from << " -> " << a.to << ": " << a.label << "\n";
    if (d.trace_parameter)
        os << "  duality parameter: trace " << to_string(*d.trace_parameter) << "\n";
    return os.str();
}

} // namespace tdual::cli
