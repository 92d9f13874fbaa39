#pragma once

#include <complex>
#include <vector>

#include "covsep/numerics.hpp"
#include "covsep/phase_space.hpp"
#include "covsep/types.hpp"

namespace covsep {

/// A Gaussian state at the covariance-matrix level. Construct through
/// validate(); the mean is carried but ignored by every entanglement test.
struct GaussianState {
    SystemShape shape;
    RealMatrix gamma;
    RealVector mean;
};

/// Outcome of the state test, with enough data to report the violation.
struct ValidationReport {
    enum class Failure { None, DimensionMismatch, NotSymmetric, NotAState };

    bool ok = false;
    Failure failure = Failure::None;
    double symmetry_residual = 0.0;     // max |gamma - gamma^T|
    double min_eigenvalue = 0.0;        // of gamma + i*sigma
    ComplexVector worst_eigenvector;    // eigenvector of the minimal eigenvalue
};

ValidationReport check_state(const RealMatrix& gamma, const SystemShape& shape,
                             const ToleranceConfig& tol);

/// Returns a validated state iff gamma is symmetric and gamma + i*sigma is
/// PSD; gamma - i*sigma >= 0 then holds by complex conjugation and is not
/// tested separately. Throws DimensionMismatch / NotSymmetric / NotAState.
GaussianState validate(const RealMatrix& gamma, const SystemShape& shape,
                       const ToleranceConfig& tol, RealVector mean = {});

/// Purity via (sigma^{-1} gamma)^2 = -1, cross-checked against the null-space
/// dimension of gamma + i*sigma being maximal (= number of modes). The two
/// characterizations must agree; disagreement throws.
bool is_pure(const GaussianState& state, const ToleranceConfig& tol);

/// exp(i m^T xi - 1/4 xi^T gamma xi). Modulus is at most 1.
std::complex<double> characteristic_value(const GaussianState& state, const RealVector& xi);

/// One product-state term of a convex mixture.
struct MixtureComponent {
    double weight = 1.0;
    RealVector mean;
    RealMatrix gamma;  // block diagonal over the A/B split
};

struct MixtureMoments {
    RealMatrix gamma;
    RealVector mean;
    RealMatrix delta;  // gamma - sum_k weight_k gamma^k, PSD
};

/// Second moments of a mixture of product states:
///   gamma = sum_k w_k (gamma^k + 2 m^k m^k^T) - 2 m m^T,  m = sum_k w_k m^k.
/// delta = gamma - sum_k w_k gamma^k is PSD, which makes the block-diagonal
/// component sum a separability witness for the mixture.
MixtureMoments mixture_covariance(const std::vector<MixtureComponent>& components,
                                  const SystemShape& shape, const ToleranceConfig& tol);

}  // namespace covsep
