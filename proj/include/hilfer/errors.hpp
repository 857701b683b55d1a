#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hilfer {

// Base class for all toolkit errors. Each subclass corresponds to one
// machine-readable error kind; the CLI maps kinds to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

struct SyntaxError : Error {
    std::size_t offset;
    std::string expected;
    SyntaxError(std::size_t off, std::string exp)
        : Error("syntax error at offset " + std::to_string(off) + ", expected " + exp),
          offset(off), expected(std::move(exp)) {}
    const char* kind() const noexcept override { return "SyntaxError"; }
};

struct UnknownIdentifier : Error {
    std::string name;
    explicit UnknownIdentifier(std::string n)
        : Error("unknown identifier '" + n + "'"), name(std::move(n)) {}
    const char* kind() const noexcept override { return "UnknownIdentifier"; }
};

struct UnboundVariable : Error {
    std::string name;
    explicit UnboundVariable(std::string n)
        : Error("unbound variable '" + n + "'"), name(std::move(n)) {}
    const char* kind() const noexcept override { return "UnboundVariable"; }
};

struct DomainError : Error {
    std::string op;
    double argument;
    DomainError(std::string o, double arg)
        : Error("domain error: " + o + "(" + std::to_string(arg) + ")"),
          op(std::move(o)), argument(arg) {}
    const char* kind() const noexcept override { return "DomainError"; }
};

struct OutOfDomain : Error {
    double t;
    explicit OutOfDomain(double tt)
        : Error("argument t=" + std::to_string(tt) + " outside [a,T]"), t(tt) {}
    const char* kind() const noexcept override { return "OutOfDomain"; }
};

struct OutOfRange : Error {
    double tau;
    explicit OutOfRange(double tt)
        : Error("tau=" + std::to_string(tt) + " outside [psi(a),psi(T)]"), tau(tt) {}
    const char* kind() const noexcept override { return "OutOfRange"; }
};

struct NonPositiveArgument : Error {
    double x;
    explicit NonPositiveArgument(double xx)
        : Error("gamma requires x>0, got " + std::to_string(xx)), x(xx) {}
    const char* kind() const noexcept override { return "NonPositiveArgument"; }
};

struct SingularAtLeftEndpoint : Error {
    SingularAtLeftEndpoint()
        : Error("psi-power with negative exponent is singular at t=a") {}
    const char* kind() const noexcept override { return "SingularAtLeftEndpoint"; }
};

struct InvalidOrder : Error {
    double alpha;
    explicit InvalidOrder(double al)
        : Error("fractional order must be positive, got " + std::to_string(al)), alpha(al) {}
    const char* kind() const noexcept override { return "InvalidOrder"; }
};

struct StencilOutOfDomain : Error {
    explicit StencilOutOfDomain(double t)
        : Error("t=" + std::to_string(t) + " too close to the interval ends for the derivative stencil") {}
    const char* kind() const noexcept override { return "StencilOutOfDomain"; }
};

struct DegenerateDelta : Error {
    double delta;
    explicit DegenerateDelta(double d)
        : Error("Delta=" + std::to_string(d) + " is degenerate (|Delta| <= 1e-12)"), delta(d) {}
    const char* kind() const noexcept override { return "DegenerateDelta"; }
};

struct InvalidProblem : Error {
    explicit InvalidProblem(const std::string& msg) : Error("invalid problem: " + msg) {}
    const char* kind() const noexcept override { return "InvalidProblem"; }
};

struct MissingMetadata : Error {
    std::string which;
    explicit MissingMetadata(std::string w)
        : Error("missing problem metadata: " + w), which(std::move(w)) {}
    const char* kind() const noexcept override { return "MissingMetadata"; }
};

struct NotContractive : Error {
    double value;
    explicit NotContractive(double v)
        : Error("contraction constant " + std::to_string(v) + " is not < 1"), value(v) {}
    const char* kind() const noexcept override { return "NotContractive"; }
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
    const char* kind() const noexcept override { return "ConfigError"; }
};

struct NotConverged : Error {
    int iterations;
    double last_diff;
    NotConverged(int it, double d)
        : Error("Picard iteration did not converge after " + std::to_string(it) +
                " iterations (last sup-diff " + std::to_string(d) + ")"),
          iterations(it), last_diff(d) {}
    const char* kind() const noexcept override { return "NotConverged"; }
};

} // namespace hilfer
