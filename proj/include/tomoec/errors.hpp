#ifndef TOMOEC_ERRORS_HPP
#define TOMOEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tomoec {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A direction vector that cannot be normalized (zero vector, duplicates, ...).
class InvalidDirection : public Error {
public:
    using Error::Error;
};

/// Matrix/vector shapes do not match the requested operation.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A linear system has no unique solution.
class SingularSystem : public Error {
public:
    using Error::Error;
};

/// Fewer integer roots than the polynomial degree were found in the search
/// range; the data violates the error model.
class RootDeficit : public Error {
public:
    using Error::Error;
};

/// Cross-determinant of two test directions vanished. Cannot happen for
/// distinct primitive directions; kept as a guard.
class DegenerateDirections : public Error {
public:
    using Error::Error;
};

/// An internal certainty was violated (e.g. a rank test promised a solvable
/// system that turned out degenerate). Indicates data outside the model.
class InternalContradiction : public Error {
public:
    using Error::Error;
};

/// An error specification references lines that do not exist, repeats a line,
/// or contains zero deltas.
class InvalidErrorSpec : public Error {
public:
    using Error::Error;
};

/// Caller-supplied parameters are out of contract.
class InvalidParameters : public Error {
public:
    using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The measured data cannot be explained within the configured error budgets.
class AssumptionViolated : public Error {
public:
    using Error::Error;
};

}  // namespace tomoec

#endif
