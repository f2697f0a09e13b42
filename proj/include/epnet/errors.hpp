#pragma once

#include <stdexcept>
#include <string>

namespace epnet {

/// Bad parameters or malformed input. Maps to CLI exit code 2.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A well-formed request the library cannot carry out (e.g. QEP on a square
/// lattice, no analytic prediction). Maps to CLI exit code 3.
struct UnsupportedOperation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Procrustean conversion asked for a product state (lambda2 = 0).
struct UnentangledInput : std::domain_error {
    using std::domain_error::domain_error;
};

/// Density queried on a distribution with atoms.
struct NoDensity : std::domain_error {
    using std::domain_error::domain_error;
};

/// Threshold estimation on a curve with no discernible transition.
struct NoTransition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace epnet
