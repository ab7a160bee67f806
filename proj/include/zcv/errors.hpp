#pragma once

#include <stdexcept>
#include <string>

namespace zcv {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ArgumentError : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

/// Raised when the inverse x-derivative is requested on data whose x-mean
/// does not vanish; the operator is undefined on such input.
struct NonZeroMean : Error {
    using Error::Error;
};

struct SingularMetric : Error {
    SingularMetric(const std::string& msg, int i, int j)
        : Error(msg), i(i), j(j) {}
    int i, j;  // worst grid location
};

struct CurvatureObstruction : Error {
    using Error::Error;
};

struct PoleAtLambda : Error {
    using Error::Error;
};

struct ConstraintViolated : Error {
    using Error::Error;
};

struct DivisionBySmallK : Error {
    using Error::Error;
};

struct MissingTimeStack : Error {
    using Error::Error;
};

struct NonUnitSpin : Error {
    using Error::Error;
};

struct NonOrthogonalGauge : Error {
    using Error::Error;
};

struct SingularGauge : Error {
    using Error::Error;
};

struct BlowUp : Error {
    using Error::Error;
};

/// Raised on malformed, truncated, or mismatched field files.
struct IoError : Error {
    using Error::Error;
};

struct UnknownName : Error {
    using Error::Error;
};

}  // namespace zcv
