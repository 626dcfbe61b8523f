#pragma once

#include "tdual/expr.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tdual::calg {

struct RewriteStep {
    std::string rule;
    std::string before;
    std::string after;
    std::string citation;
};

struct SimplifyResult {
    CstarExpr expr;
    std::vector<RewriteStep> trace;
};

// Rewrites to a normal form (innermost-first deterministic strategy).
// Throws ValidationError for rule-level misuse (e.g. a trace-scaling factor
// whose support does not match the UHF fiber) and InternalError if the rule
// set fails to terminate within the step budget.
SimplifyResult simplify_traced(const CstarExpr& e);
CstarExpr simplify(const CstarExpr& e);

// Same rule set, but every step picks a uniformly random redex. The
// confluence suite asserts the normal form is independent of the order.
SimplifyResult simplify_randomized(const CstarExpr& e, std::uint64_t seed);

} // namespace tdual::calg
