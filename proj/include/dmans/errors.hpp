#pragma once

#include <stdexcept>
#include <string>

namespace dmans {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// bad input, broken table invariants, causality
class ValidationError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class RangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace dmans
