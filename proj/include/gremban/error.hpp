#pragma once

#include <stdexcept>
#include <string>

namespace gremban {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sizes of two operands do not agree (vector length vs node count, matrix orders, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A node id, walk length or other argument lies outside its admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

class InvalidGraphError : public Error {
public:
    using Error::Error;
};

/// Normalisation needs every node to have positive degree.
class DegenerateDegreeError : public InvalidGraphError {
public:
    using InvalidGraphError::InvalidGraphError;
};

class InvalidPartitionError : public Error {
public:
    using Error::Error;
};

/// Brute-force routine refused an instance larger than its configured cap.
class SizeLimitError : public Error {
public:
    SizeLimitError(const std::string& what, std::size_t cap)
        : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

class DisconnectedGraphError : public Error {
public:
    using Error::Error;
};

/// Input violates a required involution symmetry.
class SymmetryError : public Error {
public:
    using Error::Error;
};

/// A vector or eigenspace cannot be assigned a single symmetry class.
class AmbiguityError : public Error {
public:
    using Error::Error;
};

/// An unsigned graph plus involution fails one of the Gremban-graph conditions.
class NotGrembanError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: non-convergence, divergence, overflow, singular systems.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace gremban
