#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression or image text. `offset()` is the byte offset of the
/// offending character in the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// The transform integral does not converge for the requested (s,u).
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// The function or image lies outside what the closed-form machinery handles.
class OutsideGrammarError : public Error {
public:
    using Error::Error;
};

/// A rational image whose numerator degree is not below the denominator degree.
class ImproperRationalError : public Error {
public:
    using Error::Error;
};

/// Argument outside a function's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative kernel (quadrature, root finding, contour sum) did not reach
/// its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Invalid problem data or a failure inside one of the solvers.
class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace ltt
