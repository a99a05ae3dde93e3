#pragma once

#include <stdexcept>
#include <string>

namespace secrecylab {

// Bad user input (malformed PMF, alphabet mismatch, out-of-range parameter).
// CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A requested computation exceeds a configured enumeration/budget cap.
// CLI maps this to exit code 3.
class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative routine failed to reach its tolerance. Carries the final
// bracket width when the routine has one. CLI maps this to exit code 4.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what, double bracket = 0.0)
        : std::runtime_error(what), bracket_(bracket) {}
    double bracket() const { return bracket_; }

private:
    double bracket_;
};

}  // namespace secrecylab
