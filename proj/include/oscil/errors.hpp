#pragma once

#include <stdexcept>
#include <string>

namespace oscil {

// Expression text could not be parsed. `offset` is the byte position of the
// offending token, `expected` describes what would have been legal there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t offset, std::string expected)
        : std::runtime_error(std::move(msg)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

class UnknownFunctionError : public ParseError {
public:
    UnknownFunctionError(std::string name, std::size_t offset)
        : ParseError("unknown function '" + name + "' at offset " + std::to_string(offset),
                     offset, "one of sin, cos, tan, exp, ln, sqrt, abs"),
          name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// A parameter appeared in an expression but carried no binding at eval time.
// Deliberately distinct from the in-band NaN domain-failure marker.
class UnboundParameterError : public std::runtime_error {
public:
    explicit UnboundParameterError(std::string name)
        : std::runtime_error("unbound parameter '" + name + "'"), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Invalid specification, window, or precondition violation.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A quadrature or integration path crossed a point where a coefficient is
// not evaluable. `where` is the offending abscissa.
class SingularPathError : public std::runtime_error {
public:
    SingularPathError(std::string msg, double where)
        : std::runtime_error(std::move(msg)), where_(where) {}

    double where() const noexcept { return where_; }

private:
    double where_;
};

// Numeric failure during integration (step-size underflow, step budget
// exhausted). `last_x` is the last abscissa that was still good.
class NumericError : public std::runtime_error {
public:
    NumericError(std::string msg, double last_x)
        : std::runtime_error(std::move(msg)), last_x_(last_x) {}

    double last_x() const noexcept { return last_x_; }

private:
    double last_x_;
};

// A comparison-check hypothesis does not hold; `where` names a violation point.
class HypothesisError : public std::runtime_error {
public:
    HypothesisError(std::string msg, double where)
        : std::runtime_error(std::move(msg)), where_(where) {}

    double where() const noexcept { return where_; }

private:
    double where_;
};

}  // namespace oscil
