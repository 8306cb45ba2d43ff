#ifndef CLR_ERRORS_HPP
#define CLR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace clr {

// Bad arguments or domain violations (gamma <= 2, s <= 0, malformed box, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An iterative scheme ran out of budget. Carries the best value seen so far.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& msg, double partial)
        : std::runtime_error(msg), partial_(partial) {}
    double partial() const { return partial_; }

private:
    double partial_;
};

// An integral was detected to diverge (not a budget problem).
class DivergentIntegral : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// minimize_scalar: no interior minimum inside the bracket.
class BracketFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A grid cannot hold the requested mass / resolve the requested feature.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape order beyond the symbolic-differentiation limit.
class UnsupportedOrder : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structured input (profile/symbol files, config) failed validation.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace clr

#endif
