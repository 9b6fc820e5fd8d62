#pragma once

#include <stdexcept>
#include <string>

namespace vablocks {

// Requested component lies beyond a weight / level cutoff.
struct TruncatedError : std::runtime_error {
    explicit TruncatedError(const std::string& what) : std::runtime_error(what) {}
};

// Vector refers to a basis the target structure does not own.
struct UnknownBasisError : std::runtime_error {
    explicit UnknownBasisError(const std::string& what) : std::runtime_error(what) {}
};

// Level budget exceeds a module cutoff.
struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

// A functional is not defined on a window large enough for the request.
struct WindowTooSmallError : std::runtime_error {
    explicit WindowTooSmallError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structural invariant of an input object failed validation.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vablocks
