#pragma once

#include <stdexcept>
#include <string>

namespace bowley {

/// Base type for errors the library raises about its own domain.
/// Plain precondition breaches throw std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Income shares are undefined when total income is zero.
class ZeroIncome : public Error {
public:
    using Error::Error;
};

/// Rate-based ratios are undefined when the consumption rate is zero.
class ZeroConsumptionRate : public Error {
public:
    using Error::Error;
};

/// A wealth update left the positive domain (the economy consumed itself,
/// or the value stopped being representable).
class NonPositiveWealth : public Error {
public:
    using Error::Error;
};

/// The wealth flow has no positive fixed point for these parameters.
class NoSteadyState : public Error {
public:
    using Error::Error;
};

/// The residual-absorber sector would need a negative wage bill; the
/// scenario is infeasible from the reported step onward.
class AbsorberNegative : public Error {
public:
    AbsorberNegative(const std::string& what, double time, long step)
        : Error(what), time_(time), step_(step) {}

    double time() const { return time_; }
    long step() const { return step_; }

private:
    double time_;
    long step_;
};

namespace detail {
inline std::string at_line(int line, const std::string& what) {
    return "line " + std::to_string(line) + ": " + what;
}
} // namespace detail

/// Malformed input text. Line numbers are 1-based and count every physical
/// line, including comments and blanks.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error(detail::at_line(line, what)), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Well-formed input whose values break a domain invariant.
class ValidationError : public Error {
public:
    ValidationError(int line, const std::string& what)
        : Error(detail::at_line(line, what)), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Period labels out of order or duplicated.
class OrderError : public Error {
public:
    OrderError(int line, const std::string& what)
        : Error(detail::at_line(line, what)), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

} // namespace bowley
