#pragma once

#include <stdexcept>
#include <string>

namespace tdual {

// Bad user input: dimension mismatches, illegal actions, malformed scenarios.
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input the engine cannot evaluate (unsupported
// coefficients, spaces without a cohomology model, ...). Also exit code 2.
class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

// Engine bug (diverging rewrite, broken invariant). Never expected on valid rules.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace tdual
