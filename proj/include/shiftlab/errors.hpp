#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// divide_by_linear was asked to divide by (z - lambda) but lambda is not a
/// root of the series within tolerance.
struct RootMismatch : Error {
    using Error::Error;
};

/// The zero polynomial has no inner/outer factorization.
struct ZeroPolynomial : Error {
    using Error::Error;
};

/// The companion-matrix eigensolver did not converge.
struct RootFindingFailure : Error {
    using Error::Error;
};

/// A polynomial root lies too close to the unit circle to classify.
struct BoundaryRoot : Error {
    using Error::Error;
};

/// The inner function vanishes at alpha*conj(beta); the associated subspace
/// family is undefined there.
struct ThetaVanishesAtAbBar : Error {
    using Error::Error;
};

/// Requested degree does not fit the truncation order.
struct TruncationOverflow : Error {
    using Error::Error;
};

struct UnsupportedSelector : Error {
    using Error::Error;
};

/// Two formulas that must agree disagreed beyond tolerance; an arithmetic bug.
struct InternalInconsistency : Error {
    using Error::Error;
};

/// A finite-truncation verdict did not stabilize across truncation sizes.
struct InconclusiveTruncation : Error {
    using Error::Error;
};

struct ZeroVector : Error {
    using Error::Error;
};

struct UnknownSuite : Error {
    using Error::Error;
};

}  // namespace shiftlab
