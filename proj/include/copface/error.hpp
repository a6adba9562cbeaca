#pragma once

#include <stdexcept>
#include <string>

namespace copface {

/// Base class of every error raised by the library. `exit_code()` is the
/// process status the CLI reports for it.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "error"; }
    virtual int exit_code() const noexcept { return 1; }
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
    const char* kind() const noexcept override { return "precondition"; }
    int exit_code() const noexcept override { return 2; }
};

class DimensionMismatch : public PreconditionError {
public:
    explicit DimensionMismatch(const std::string& what) : PreconditionError(what) {}
    const char* kind() const noexcept override { return "dimension_mismatch"; }
};

/// Malformed textual input (matrix files, index lists, JSON).
class ParseError : public PreconditionError {
public:
    explicit ParseError(const std::string& what) : PreconditionError(what) {}
    const char* kind() const noexcept override { return "parse"; }
};

/// A computation could not reach a verdict within its budget or tolerances.
class NumericalInconclusive : public Error {
public:
    explicit NumericalInconclusive(const std::string& what) : Error(what) {}
    const char* kind() const noexcept override { return "inconclusive"; }
    int exit_code() const noexcept override { return 3; }
};

/// A construction produced an object that fails its own structural checks.
class ConstructionFailure : public NumericalInconclusive {
public:
    explicit ConstructionFailure(const std::string& what) : NumericalInconclusive(what) {}
    const char* kind() const noexcept override { return "construction_failure"; }
};

/// Results that contradict a mathematical identity the inputs guarantee.
class InternalConsistencyError : public NumericalInconclusive {
public:
    explicit InternalConsistencyError(const std::string& what) : NumericalInconclusive(what) {}
    const char* kind() const noexcept override { return "internal_consistency"; }
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
    const char* kind() const noexcept override { return "io"; }
    int exit_code() const noexcept override { return 4; }
};

} // namespace copface
