#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace npadi {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A finite-difference footprint would leave the grid.
class StencilError : public Error {
public:
    using Error::Error;
};

class ConfigurationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptySystemError : public Error {
public:
    using Error::Error;
};

/// An atom does not lie strictly inside the grid.
class PlacementError : public Error {
public:
    PlacementError(const std::string& what, std::size_t atom_index)
        : Error(what), atom_index_(atom_index) {}

    std::size_t atom_index() const noexcept { return atom_index_; }

private:
    std::size_t atom_index_;
};

/// A boundary node coincides with a point charge.
class SingularBoundaryError : public Error {
public:
    using Error::Error;
};

/// Zero pivot during tridiagonal elimination.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Time stepping produced NaN/Inf.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, long step, double max_magnitude)
        : Error(what), step_(step), max_magnitude_(max_magnitude) {}

    long step() const noexcept { return step_; }
    double max_magnitude() const noexcept { return max_magnitude_; }

private:
    long step_;
    double max_magnitude_;
};

/// Inner Krylov solve failed to reach its tolerance.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace npadi
