#ifndef DPX_ERRORS_HPP
#define DPX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dpx {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic with a zero divisor (field division, rational construction).
struct DivisionByZeroError : Error {
    using Error::Error;
};

// Evaluation of a rational function at a zero of its denominator.
struct PoleError : Error {
    using Error::Error;
};

// Two values from different rings/presentations were combined.
struct RingMismatchError : Error {
    using Error::Error;
};

// A documented precondition was violated (duplicate interpolation nodes,
// division by t-1 of a function not vanishing at 1, lambda in {0,1}, ...).
struct DomainError : Error {
    using Error::Error;
};

// Syntax error in an expression or input document.
struct ParseError : Error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

} // namespace dpx

#endif
