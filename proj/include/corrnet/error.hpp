#pragma once

#include <stdexcept>
#include <string>

namespace corrnet {

/// Input data violates a precondition (malformed file, gaps, constant series, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed (e.g. eigen-solver did not converge).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or caller arguments.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace corrnet
