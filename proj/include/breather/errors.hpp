#pragma once

#include <stdexcept>
#include <string>

namespace breather {

// Base for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unknown scenario name or invalid configuration.
struct CatalogError : Error {
    using Error::Error;
};

// Field norm below the degeneracy threshold; moments are undefined.
struct DegenerateFieldError : Error {
    using Error::Error;
};

// a(t) <= 0 or other modulation-domain violation.
struct DomainError : Error {
    using Error::Error;
};

// Zero pivot in the tridiagonal elimination.
struct SingularSystemError : Error {
    using Error::Error;
};

// Non-finite amplitudes or runaway norm during propagation.
struct BlowUpError : Error {
    using Error::Error;
};

// 1 + g|psi|^2 <= 0 in the nonpolynomial term.
struct NpseDomainError : Error {
    using Error::Error;
};

// Too few peaks (or similar) for the requested analysis.
struct InsufficientDataError : Error {
    using Error::Error;
};

// Peak counts of two series do not match.
struct AlignmentError : Error {
    using Error::Error;
};

// Failed to create or write an output artifact.
struct IoError : Error {
    using Error::Error;
};

}  // namespace breather
