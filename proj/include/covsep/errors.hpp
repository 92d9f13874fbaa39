#pragma once

#include <stdexcept>
#include <string>

namespace covsep {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NonFiniteInput : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    NotHermitian(const std::string& msg, double residual_) : Error(msg), residual(residual_) {}
    double residual;
};

struct NotSymmetric : Error {
    NotSymmetric(const std::string& msg, double max_asymmetry_)
        : Error(msg), max_asymmetry(max_asymmetry_) {}
    double max_asymmetry;
};

struct NotPsd : Error {
    NotPsd(const std::string& msg, double min_eigenvalue_)
        : Error(msg), min_eigenvalue(min_eigenvalue_) {}
    double min_eigenvalue;
};

/// gamma + i*sigma has a negative eigenvalue: not a quantum covariance matrix.
struct NotAState : Error {
    NotAState(const std::string& msg, double min_eigenvalue_)
        : Error(msg), min_eigenvalue(min_eigenvalue_) {}
    double min_eigenvalue;
};

/// gamma + i*sigma_tilde has a negative eigenvalue.
struct NotPpt : Error {
    NotPpt(const std::string& msg, double min_eigenvalue_)
        : Error(msg), min_eigenvalue(min_eigenvalue_) {}
    double min_eigenvalue;
};

struct AlreadyMinimal : Error {
    using Error::Error;
};

/// Both quadratic forms 1/(xi^T M^+ xi) came out nonpositive; signals
/// tolerance breakdown, not a property of the input.
struct NumericalStall : Error {
    using Error::Error;
};

struct MaxStepsExceeded : Error {
    using Error::Error;
};

struct ParamDomain : Error {
    using Error::Error;
};

struct SingularOrbit : Error {
    SingularOrbit(const std::string& msg, double rcond_) : Error(msg), rcond(rcond_) {}
    double rcond;
};

/// The orbit construction produced a matrix with a large imaginary or
/// asymmetric part. Indicates a convention bug, not a user error.
struct RealityFailure : Error {
    RealityFailure(const std::string& msg, double residual_) : Error(msg), residual(residual_) {}
    double residual;
};

struct FactorizationResidual : Error {
    FactorizationResidual(const std::string& msg, double residual_)
        : Error(msg), residual(residual_) {}
    double residual;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace covsep
