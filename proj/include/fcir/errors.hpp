#pragma once

#include <stdexcept>
#include <string>

namespace fcir {

// Invalid argument or configuration supplied by the caller.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical routine could not complete (e.g. a covariance matrix that is
// not positive definite in floating point).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fcir
