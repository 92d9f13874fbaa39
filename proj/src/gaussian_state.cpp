#include "covsep/gaussian_state.hpp"

#include <cmath>
#include <limits>

namespace covsep {

namespace {

ComplexMatrix form_matrix(const RealMatrix& gamma, const RealMatrix& sigma) {
    return gamma.cast<Complex>() + Complex(0.0, 1.0) * sigma.cast<Complex>();
}

}  // namespace

ValidationReport check_state(const RealMatrix& gamma, const SystemShape& shape,
                             const ToleranceConfig& tol) {
    ValidationReport report;
    if (gamma.rows() != shape.dim() || gamma.cols() != shape.dim()) {
        report.failure = ValidationReport::Failure::DimensionMismatch;
        return report;
    }
    if (!gamma.allFinite()) {
        report.failure = ValidationReport::Failure::NotAState;
        report.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());
    report.symmetry_residual = (gamma - gamma.transpose()).cwiseAbs().maxCoeff();
    if (report.symmetry_residual > tol.herm_tol * scale) {
        report.failure = ValidationReport::Failure::NotSymmetric;
        return report;
    }

    const SymplecticForm form = standard_symplectic(shape);
    const EigenSystem es = hermitian_eigen(form_matrix(gamma, form.sigma), tol.herm_tol);
    report.min_eigenvalue = es.eigenvalues(0);
    report.worst_eigenvector = es.eigenvectors.col(0);
    const double lmax = es.eigenvalues(es.eigenvalues.size() - 1);
    if (report.min_eigenvalue < -tol.rtol * std::max(1.0, lmax)) {
        report.failure = ValidationReport::Failure::NotAState;
        return report;
    }
    report.ok = true;
    return report;
}

GaussianState validate(const RealMatrix& gamma, const SystemShape& shape,
                       const ToleranceConfig& tol, RealVector mean) {
    const ValidationReport report = check_state(gamma, shape, tol);
    switch (report.failure) {
        case ValidationReport::Failure::None:
            break;
        case ValidationReport::Failure::DimensionMismatch:
            throw DimensionMismatch("covariance matrix does not match the system shape");
        case ValidationReport::Failure::NotSymmetric:
            throw NotSymmetric("covariance matrix is not symmetric", report.symmetry_residual);
        case ValidationReport::Failure::NotAState:
            throw NotAState("gamma + i*sigma is not positive semidefinite",
                            report.min_eigenvalue);
    }
    if (mean.size() == 0)
        mean = RealVector::Zero(shape.dim());
    else if (mean.size() != shape.dim())
        throw DimensionMismatch("mean vector does not match the system shape");
    return {shape, gamma, std::move(mean)};
}

bool is_pure(const GaussianState& state, const ToleranceConfig& tol) {
    const SymplecticForm form = standard_symplectic(state.shape);
    // sigma^{-1} = -sigma in canonical coordinates.
    const RealMatrix w = -form.sigma * state.gamma;
    const Index n = state.shape.dim();
    const double residual = (w * w + RealMatrix::Identity(n, n)).norm();
    const bool pure_by_square = residual <= 1e-8 * static_cast<double>(n);

    const ComplexMatrix h = form_matrix(state.gamma, form.sigma);
    const Index null_dim = null_space(h, tol).cols();
    const bool pure_by_null = null_dim == static_cast<Index>(state.shape.modes());

    if (pure_by_square != pure_by_null)
        throw Error("purity characterizations disagree; tolerance breakdown");
    return pure_by_square;
}

std::complex<double> characteristic_value(const GaussianState& state, const RealVector& xi) {
    if (xi.size() != state.shape.dim())
        throw DimensionMismatch("argument dimension does not match the phase space");
    const double phase = state.mean.dot(xi);
    const double decay = 0.25 * xi.dot(state.gamma * xi);
    return std::exp(Complex(-decay, phase));
}

MixtureMoments mixture_covariance(const std::vector<MixtureComponent>& components,
                                  const SystemShape& shape, const ToleranceConfig& tol) {
    if (components.empty())
        throw Error("mixture needs at least one component");
    const Index n = shape.dim();

    double weight_sum = 0.0;
    for (const auto& c : components) {
        if (c.weight <= 0.0 || c.weight > 1.0)
            throw Error("mixture weights must lie in (0, 1]");
        weight_sum += c.weight;
        if (c.gamma.rows() != n || c.gamma.cols() != n || c.mean.size() != n)
            throw DimensionMismatch("mixture component does not match the system shape");
        validate(c.gamma, shape, tol);
        const double block_scale = std::max(1.0, c.gamma.norm());
        if (cross_block(c.gamma, shape).norm() > tol.btol * block_scale)
            throw Error("mixture component is not a product state");
    }
    if (std::abs(weight_sum - 1.0) > 1e-12)
        throw Error("mixture weights must sum to 1");

    RealVector mean = RealVector::Zero(n);
    for (const auto& c : components)
        mean += c.weight * c.mean;

    RealMatrix gamma = RealMatrix::Zero(n, n);
    RealMatrix component_sum = RealMatrix::Zero(n, n);
    for (const auto& c : components) {
        gamma += c.weight * (c.gamma + 2.0 * c.mean * c.mean.transpose());
        component_sum += c.weight * c.gamma;
    }
    gamma -= 2.0 * mean * mean.transpose();

    return {gamma, std::move(mean), gamma - component_sum};
}

}  // namespace covsep
