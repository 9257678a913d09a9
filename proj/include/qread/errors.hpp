#pragma once

#include <stdexcept>
#include <string>

namespace qread {

/// Invalid argument values (out-of-domain parameters, bad configs).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Requested memory design has no feasible reflectivity.
struct DesignInfeasibleError : DomainError {
    using DomainError::DomainError;
};

/// Inverse-design target lies outside the attainable information range.
struct UnreachableTargetError : DomainError {
    using DomainError::DomainError;
};

/// Truncation tail exceeds the configured tolerance; no verdict possible.
struct CutoffError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operator set violates a required algebraic identity (e.g. completeness).
struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix data does not fit the expected structural form.
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical degeneracy: a quantity that must be non-negative came out
/// negative beyond tolerance.
struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qread
