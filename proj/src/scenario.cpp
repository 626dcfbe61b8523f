#include "tdual/scenario.hpp"

#include "tdual/errors.hpp"

#include <fstream>
#include <sstream>

namespace tdual::cli {

using abgroup::PrimeSet;
using abgroup::SLocalGroup;
using calg::ActionDescriptor;
using calg::ActionKind;
using calg::CrossedGroup;
using calg::CstarExpr;
using topology::CohClass;
using topology::SimplicialComplex;
using topology::Space;
using topology::SpaceKind;

Command parse_command(const std::string& name) {
    if (name == "classify") return Command::Classify;
    if (name == "tdualize") return Command::TDualize;
    if (name == "ktheory") return Command::KTheory;
    if (name == "simplify") return Command::Simplify;
    if (name == "cohomology") return Command::Cohomology;
    throw ValidationError("unknown command: " + name);
}

std::string command_str(Command c) {
    switch (c) {
        case Command::Classify: return "classify";
        case Command::TDualize: return "tdualize";
        case Command::KTheory: return "ktheory";
        case Command::Simplify: return "simplify";
        case Command::Cohomology: return "cohomology";
    }
    return "?";
}

// --- groups -------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

Rat parse_rational(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw ValidationError("empty rational");
    try {
        Rat q(t);
        if (q.get_den() == 0) throw ValidationError("rational with zero denominator: " + text);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ValidationError("cannot parse rational: " + text);
    }
}

} // namespace

SLocalGroup parse_group(const std::string& text) {
    SLocalGroup result;
    std::stringstream ss(text);
    std::string term;
    while (std::getline(ss, term, '+')) {
        term = trim(term);
        if (term.empty()) throw ValidationError("group: empty summand in '" + text + "'");
        if (term == "0") continue;

        long rank = 1;
        if (auto caret = term.find('^'); caret != std::string::npos) {
            rank = std::stol(term.substr(caret + 1));
            term = trim(term.substr(0, caret));
        }
        if (term == "Q") {
            result = direct_sum(result, SLocalGroup::rationals(rank));
        } else if (term == "Z") {
            result = direct_sum(result, SLocalGroup::free(rank));
        } else if (term.rfind("Z/", 0) == 0) {
            Int d(term.substr(2));
            for (long i = 0; i < rank; ++i)
                result = direct_sum(result, SLocalGroup::cyclic(d));
        } else if (term.rfind("Z[1/", 0) == 0 && term.back() == ']') {
            Int m(term.substr(4, term.size() - 5));
            if (m < 2) throw ValidationError("group: bad localization '" + term + "'");
            result = direct_sum(result,
                                SLocalGroup::free(rank, PrimeSet::of(prime_factors(m))));
        } else {
            throw ValidationError("group: cannot parse summand '" + term + "'");
        }
    }
    return result;
}

// --- spaces -------------------------------------------------------------------

namespace {

Space parse_named_space(const std::string& token) {
    if (token == "pt") return Space::point();
    if (token == "S1") return Space::circle();
    if (token == "RP2") return Space::rp2();
    auto strict_dimension = [&](const std::string& digits) {
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("unknown space name: " + token);
        if (digits.size() > 2) throw ValidationError("space dimension out of range: " + token);
        return std::stoi(digits);
    };
    if (token.size() >= 2 && token[0] == 'S') return Space::sphere(strict_dimension(token.substr(1)));
    if (token.size() >= 2 && token[0] == 'T') return Space::torus(strict_dimension(token.substr(1)));
    throw ValidationError("unknown space name: " + token);
}

} // namespace

Space parse_space(const json& spec) {
    if (spec.is_string()) {
        std::string text = spec.get<std::string>();
        std::vector<Space> factors;
        std::size_t pos = 0;
        while (true) {
            std::size_t next = text.find(" x ", pos);
            std::string token = trim(next == std::string::npos
                                         ? text.substr(pos)
                                         : text.substr(pos, next - pos));
            if (token.empty()) throw ValidationError("space: empty factor in '" + text + "'");
            factors.push_back(parse_named_space(token));
            if (next == std::string::npos) break;
            pos = next + 3;
        }
        return factors.size() == 1 ? factors.front() : Space::product(std::move(factors));
    }
    if (spec.is_object() && spec.contains("triangulation")) {
        const json& t = spec.at("triangulation");
        SimplicialComplex k;
        k.vertex_count = t.at("vertices").get<std::size_t>();
        for (const json& s : t.at("simplices"))
            k.maximal_simplices.push_back(s.get<std::vector<int>>());
        k.validate();
        return Space::triangulated(std::move(k));
    }
    throw ValidationError("space: expected a name string or a triangulation object");
}

json space_to_json(const Space& x) {
    if (x.kind() == SpaceKind::Triangulated) {
        json t;
        t["vertices"] = x.complex().vertex_count;
        t["simplices"] = x.complex().maximal_simplices;
        return json{{"triangulation", t}};
    }
    return x.str();
}

// --- actions -------------------------------------------------------------------

namespace {

ActionDescriptor parse_action_descriptor(const json& spec) {
    std::string kind = spec.at("kind").get<std::string>();
    ActionDescriptor a;
    if (kind == "trace_scaling") {
        a = ActionDescriptor::trace_scaling(
            parse_rational(spec.at("factor").is_string()
                               ? spec.at("factor").get<std::string>()
                               : std::to_string(spec.at("factor").get<long>())));
    } else if (kind == "quasifree") {
        std::string parameter = spec.at("parameter").get<std::string>();
        if (parameter == "irrational+")
            a = ActionDescriptor::quasifree_irrational(true);
        else if (parameter == "irrational-")
            a = ActionDescriptor::quasifree_irrational(false);
        else
            a = ActionDescriptor::quasifree_rational(parse_rational(parameter));
    } else if (kind == "translation") {
        a = ActionDescriptor::translation();
    } else if (kind == "dual") {
        a = ActionDescriptor::dual_of(parse_action_descriptor(spec.at("of")));
    } else {
        throw ValidationError("unknown action kind: " + kind);
    }
    if (spec.value("spectrum_fixing", false))
        a = ActionDescriptor::spectrum_fixing(a, spec.value("commutes_with_translation", true));
    else if (spec.contains("commutes_with_translation"))
        a.commutes_with_translation = spec.at("commutes_with_translation").get<bool>();
    if (spec.contains("rokhlin_dimension")) {
        int dim = spec.at("rokhlin_dimension").get<int>();
        if (dim == 0)
            a.rokhlin_dimension = calg::RokhlinDimension::Zero;
        else if (dim == 1)
            a.rokhlin_dimension = calg::RokhlinDimension::One;
        else
            throw ValidationError("rokhlin_dimension must be 0 or 1");
    }
    return a;
}

json action_descriptor_to_json(const ActionDescriptor& a) {
    json j;
    const ActionDescriptor* core = &a;
    if (a.kind == ActionKind::SpectrumFixing) {
        core = a.inner.get();
        j["spectrum_fixing"] = true;
        j["commutes_with_translation"] = a.commutes_with_translation;
    }
    switch (core->kind) {
        case ActionKind::TraceScaling:
            j["kind"] = "trace_scaling";
            j["factor"] = to_string(core->factor);
            break;
        case ActionKind::QuasiFreeO2:
            j["kind"] = "quasifree";
            j["parameter"] = core->irrational
                                 ? (core->positive_parameter ? "irrational+" : "irrational-")
                                 : to_string(core->factor);
            break;
        case ActionKind::TranslationLift:
            j["kind"] = "translation";
            break;
        case ActionKind::DualOf:
            j["kind"] = "dual";
            j["of"] = action_descriptor_to_json(*core->inner);
            break;
        case ActionKind::SpectrumFixing:
            throw InternalError("nested spectrum-fixing actions are not serializable");
    }
    // trace-scaling and irrational quasi-free actions set their own Rokhlin
    // dimension at construction; only explicit overrides are serialized
    if (a.kind == ActionKind::TranslationLift &&
        a.rokhlin_dimension == calg::RokhlinDimension::Zero)
        j["rokhlin_dimension"] = 0;
    if (a.rokhlin_dimension == calg::RokhlinDimension::One) j["rokhlin_dimension"] = 1;
    return j;
}

CrossedGroup parse_group_name(const std::string& g) {
    if (g == "Z") return CrossedGroup::Z;
    if (g == "R") return CrossedGroup::R;
    if (g == "S1") return CrossedGroup::S1;
    throw ValidationError("unknown acting group: " + g + " (expected Z, R or S1)");
}

} // namespace

// --- scenario ------------------------------------------------------------------

Scenario parse_scenario(const json& j) {
    if (!j.is_object()) throw ValidationError("scenario: expected a JSON object");
    Scenario s;
    s.command = parse_command(j.at("command").get<std::string>());
    s.space = parse_space(j.value("space", json("pt")));
    s.fiber = catalog::parse_algebra(j.value("fiber", std::string("C")));

    if (j.contains("class")) {
        calg::ClassifyResult classification = calg::classify_bundles(s.space, s.fiber);
        for (const auto& [key, value] : j.at("class").items()) {
            int degree = std::stoi(key);
            const SLocalGroup* group = classification.factor(degree);
            if (!group)
                throw ValidationError("class: degree " + key +
                                      " is not a factor of the classification group of (" +
                                      s.space.str() + ", " + s.fiber.str() + ")");
            CohClass c = CohClass::zero(degree, *group);
            auto components = value.get<std::vector<long>>();
            if (components.size() != c.components.size())
                throw ValidationError("class: degree " + key + " expects " +
                                      std::to_string(c.components.size()) +
                                      " components (group " + group->str() + ")");
            for (std::size_t i = 0; i < components.size(); ++i)
                c.components[i] = components[i];
            s.cls.entries.push_back(std::move(c));
        }
        std::sort(s.cls.entries.begin(), s.cls.entries.end(),
                  [](const CohClass& a, const CohClass& b) { return a.degree < b.degree; });
    }

    for (const json& spec : j.value("actions", json::array())) {
        ActionSpec action;
        action.group = parse_group_name(spec.at("group").get<std::string>());
        action.descriptor = parse_action_descriptor(spec);
        s.actions.push_back(std::move(action));
    }

    if (j.contains("degree")) s.degree = j.at("degree").get<int>();
    if (j.contains("coefficients"))
        s.coefficients = parse_group(j.at("coefficients").get<std::string>());
    if (s.command == Command::Cohomology && !s.coefficients)
        throw ValidationError("cohomology: missing 'coefficients'");
    return s;
}

json Scenario::to_json() const {
    json j;
    j["command"] = command_str(command);
    j["space"] = space_to_json(space);
    // reconstruct the scenario-file fiber name
    switch (fiber.kind()) {
        case catalog::AlgebraKind::Complex: j["fiber"] = "C"; break;
        case catalog::AlgebraKind::JiangSu: j["fiber"] = "Z"; break;
        case catalog::AlgebraKind::Cuntz2: j["fiber"] = "O2"; break;
        case catalog::AlgebraKind::CuntzInf: j["fiber"] = "Oinf"; break;
        case catalog::AlgebraKind::RazakJacelon: j["fiber"] = "W"; break;
        case catalog::AlgebraKind::UHF:
        case catalog::AlgebraKind::UHFtensorOinf: {
            std::string name = "UHF:";
            if (fiber.supernatural().is_all()) {
                name += "ALL";
            } else {
                const auto& primes = fiber.supernatural().support.primes();
                for (std::size_t i = 0; i < primes.size(); ++i)
                    name += (i ? "," : "") + primes[i].get_str();
            }
            if (fiber.kind() == catalog::AlgebraKind::UHFtensorOinf) name += "*Oinf";
            j["fiber"] = name;
            break;
        }
        default:
            throw InternalError("scenario: derived fiber cannot be serialized");
    }
    if (!cls.entries.empty()) {
        json c = json::object();
        for (const auto& entry : cls.entries) {
            std::vector<long> components;
            for (const Int& v : entry.components)
                components.push_back(static_cast<long>(v.get_si()));
            c[std::to_string(entry.degree)] = components;
        }
        j["class"] = c;
    }
    if (!actions.empty()) {
        json list = json::array();
        for (const ActionSpec& a : actions) {
            json spec = action_descriptor_to_json(a.descriptor);
            spec["group"] = calg::group_str(a.group);
            list.push_back(spec);
        }
        j["actions"] = list;
    }
    if (command == Command::Cohomology) {
        j["degree"] = degree;
        j["coefficients"] = coefficients->str();
    }
    return j;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        // the message carries line and column information
        throw ValidationError(std::string("scenario parse error: ") + e.what());
    }
    return parse_scenario(j);
}

CstarExpr scenario_expression(const Scenario& s) {
    CstarExpr expr = CstarExpr::bundle(s.space, s.fiber, s.cls);
    for (const ActionSpec& a : s.actions)
        expr = CstarExpr::crossed(expr, a.group, a.descriptor);
    return expr;
}

calg::Diagnostics validate_scenario(const Scenario& s) {
    calg::Diagnostics d;
    try {
        calg::classify_bundles(s.space, s.fiber);
    } catch (const std::exception& e) {
        d.add(calg::Severity::Error, e.what());
    }
    CstarExpr base = CstarExpr::bundle(s.space, s.fiber, s.cls);
    for (const ActionSpec& a : s.actions) {
        calg::Diagnostics step = calg::validate_action(base, a.group, a.descriptor);
        d.items.insert(d.items.end(), step.items.begin(), step.items.end());
        base = CstarExpr::crossed(base, a.group, a.descriptor);
    }
    if (s.command == Command::Cohomology && s.degree < 0)
        d.add(calg::Severity::Error, "cohomology: negative degree");
    return d;
}

} // namespace tdual::cli
