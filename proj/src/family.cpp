#include "covsep/family.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "covsep/errors.hpp"
#include "covsep/gaussian_state.hpp"
#include "covsep/numerics.hpp"
#include "covsep/phase_space.hpp"

namespace covsep {

namespace {

constexpr Index kDim = 8;
const SystemShape kShape{2, 2};
constexpr Complex kImag(0.0, 1.0);

std::array<RealMatrix, 8> orbit_elements() {
    const SymmetryOperators ops = symmetry_operators();
    const RealMatrix identity = RealMatrix::Identity(kDim, kDim);
    return {identity,        ops.r,         ops.c,          ops.s,
            ops.r * ops.c,   ops.r * ops.s, ops.c * ops.s,  ops.r * ops.c * ops.s};
}

}  // namespace

FamilyParams::FamilyParams(double a_, double b_, double c_, double e_, double f_)
    : a(a_), b(b_), c(c_), e(e_), f(f_) {
    for (double value : {a, b, c, e, f}) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw ParamDomain("family parameters must be positive finite reals");
    }
}

SymmetryOperators symmetry_operators() {
    RealVector s_diag(kDim), c_diag(kDim);
    s_diag << 1, 1, -1, -1, 1, -1, -1, 1;
    c_diag << 1, -1, 1, -1, 1, -1, 1, -1;

    RealMatrix r = RealMatrix::Zero(kDim, kDim);
    r(0, 2) = 1.0;
    r(1, 3) = 1.0;
    r(6, 4) = 1.0;
    r(7, 5) = 1.0;
    r -= RealMatrix(r.transpose());

    return {RealMatrix(s_diag.asDiagonal()), RealMatrix(c_diag.asDiagonal()), r};
}

ComplexVector seed_vector(const FamilyParams& p) {
    ComplexVector omega(kDim);
    omega << Complex(-p.a, 0.0), Complex(0.0, p.b), Complex(p.c, 0.0),
        Complex(0.0, -p.d()), Complex(p.e, 0.0), Complex(0.0, -p.f),
        Complex(1.0, 0.0), Complex(0.0, 0.0);
    return omega;
}

RealMatrix build_gamma(const FamilyParams& p, const ToleranceConfig& tol) {
    if (!(p.a < p.c * p.e))
        throw ParamDomain("family requires a < c*e strictly");
    return build_gamma_from_seed(seed_vector(p), tol);
}

RealMatrix build_gamma_from_seed(const ComplexVector& omega1, const ToleranceConfig& tol) {
    if (omega1.size() != kDim)
        throw DimensionMismatch("seed vector must have length 8");
    if (!omega1.allFinite() || omega1.norm() == 0.0)
        throw ParamDomain("seed vector must be finite and nonzero");

    const RealMatrix sigma = standard_symplectic(kShape).sigma;
    const ComplexVector lambda1 = -kImag * (sigma.cast<Complex>() * omega1);

    const auto group = orbit_elements();
    ComplexMatrix omega(kDim, kDim), lambda(kDim, kDim);
    for (int k = 0; k < 8; ++k) {
        const ComplexMatrix g = group[static_cast<std::size_t>(k)].cast<Complex>();
        omega.col(k) = g * omega1;
        lambda.col(k) = g * lambda1;
    }

    Eigen::JacobiSVD<ComplexMatrix> svd(omega);
    const auto& sv = svd.singularValues();
    const double rcond = sv(sv.size() - 1) / sv(0);
    if (!(rcond >= 1e-12))
        throw SingularOrbit("orbit matrix is numerically singular", rcond);

    // gamma = Lambda * Omega^{-1}, computed as a transposed solve.
    const ComplexMatrix gamma_c =
        omega.transpose().partialPivLu().solve(lambda.transpose()).transpose();

    const double real_scale = std::max(1.0, gamma_c.real().cwiseAbs().maxCoeff());
    const double imag_residual = gamma_c.imag().cwiseAbs().maxCoeff();
    if (imag_residual > 1e-9 * real_scale)
        throw RealityFailure("orbit construction produced a non-real covariance",
                             imag_residual);

    RealMatrix gamma = gamma_c.real();
    gamma = 0.5 * (gamma + gamma.transpose().eval());
    return make_ppt_covariance(gamma, kShape, tol).gamma;
}

FamilyCheck verify_family_member(const RealMatrix& gamma, const ToleranceConfig& tol) {
    if (gamma.rows() != kDim || gamma.cols() != kDim)
        throw DimensionMismatch("family members are 8x8 matrices");

    FamilyCheck check;
    const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());

    check.symmetry_residual = (gamma - gamma.transpose()).cwiseAbs().maxCoeff();
    check.symmetric = check.symmetry_residual <= tol.herm_tol * scale;

    const SymmetryOperators ops = symmetry_operators();
    check.commutation_residual = 0.0;
    for (const RealMatrix* op : {&ops.s, &ops.c, &ops.r}) {
        const double residual = (gamma * (*op) - (*op) * gamma).cwiseAbs().maxCoeff();
        check.commutation_residual = std::max(check.commutation_residual, residual);
    }
    check.commutes_with_symmetries = check.commutation_residual <= 1e-9 * scale;

    if (check.symmetric) {
        const RealMatrix sigma = standard_symplectic(kShape).sigma;
        const RealMatrix sigma_tilde = partial_transpose_form(standard_symplectic(kShape));
        const ComplexMatrix h =
            gamma.cast<Complex>() + kImag * sigma.cast<Complex>();
        const ComplexMatrix h_tilde_conj =
            gamma.cast<Complex>() - kImag * sigma_tilde.cast<Complex>();

        const EigenSystem es = hermitian_eigen(h, tol.herm_tol);
        check.form_eigenvalues = es.eigenvalues;
        check.state_psd = is_psd(h, tol);

        const ComplexMatrix s_c = ops.s.cast<Complex>();
        check.equivalence_residual =
            (s_c * h * s_c - h_tilde_conj).cwiseAbs().maxCoeff();
        check.unitary_equivalence = check.equivalence_residual <= 1e-9 * scale;

        if (check.state_psd && is_ppt_matrix(gamma, kShape, tol))
            check.minimally_ppt = is_minimally_ppt({kShape, gamma}, tol);
    }

    check.non_block_diagonal = !is_block_diagonal(gamma, kShape, tol);

    const Classification cls = classify(gamma, kShape, tol);
    check.verdict = cls.verdict;
    check.bound_entangled = cls.verdict == Verdict::BoundEntangled;
    return check;
}

}  // namespace covsep
