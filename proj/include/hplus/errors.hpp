#pragma once

#include <stdexcept>

namespace hplus {

/// Malformed or out-of-domain user input (CLI exit code 2).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold (CLI exit code 3).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A construction produced a result violating its own postcondition (CLI exit code 4).
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hplus
