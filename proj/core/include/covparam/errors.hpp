#pragma once

#include <stdexcept>
#include <string>

namespace covparam {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The caller handed us something invalid (bad matrix, bad config, bad grid).
/// The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure broke down on otherwise valid input.
/// The CLI maps these to exit code 1.
class NumericalError : public Error {
public:
    using Error::Error;
};

class InvalidParametrization final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotStable final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IllConditioned final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidConfig final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InsufficientData final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SingularLyapunov final : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SolverFailure final : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureFailure final : public NumericalError {
public:
    QuadratureFailure(const std::string& what, double achieved_error)
        : NumericalError(what), achieved_error(achieved_error) {}

    double achieved_error;
};

}  // namespace covparam
