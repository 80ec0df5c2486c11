#pragma once

#include <stdexcept>
#include <string>

namespace projgeom {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input matrix is not Hermitian within the accepted residual.
struct NotHermitianError : Error {
    using Error::Error;
};

/// Matrix is numerically singular; carries the offending singular value.
struct SingularError : Error {
    double smallest_singular_value;
    SingularError(const std::string& msg, double sv)
        : Error(msg), smallest_singular_value(sv) {}
};

/// p + q - 1 is not invertible at the configured cutoff.
struct SumNotInvertibleError : Error {
    using Error::Error;
};

/// p + q - 1 has a nontrivial kernel, so the generic construction does not apply.
struct SumNotInjectiveError : Error {
    using Error::Error;
};

/// ||p - q|| >= 1, outside the open unit ball.
struct NormNotLessThanOneError : Error {
    using Error::Error;
};

/// Ranks disagree where equal rank is required.
struct RankMismatchError : Error {
    using Error::Error;
};

/// Supports or ranges overlap where orthogonality is required.
struct NotOrthogonalError : Error {
    using Error::Error;
};

/// Requested rank is outside 0..n.
struct BadRankError : Error {
    using Error::Error;
};

/// Frame columns are not numerically left-invertible.
struct FrameDeficientError : Error {
    using Error::Error;
};

/// Projection lies outside the requested affine chart.
struct NotInChartError : Error {
    using Error::Error;
};

/// Projection lies outside the open unit ball around the basepoint.
struct NotInBallError : Error {
    using Error::Error;
};

/// Transition target chart does not contain the decoded projection.
struct NotInOverlapError : Error {
    using Error::Error;
};

/// Malformed command-line arguments or input files.
struct BadArgumentsError : Error {
    using Error::Error;
};

/// Malformed CPLXMAT text.
struct ParseError : BadArgumentsError {
    using BadArgumentsError::BadArgumentsError;
};

}  // namespace projgeom
