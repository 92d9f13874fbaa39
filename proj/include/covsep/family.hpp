#pragma once

#include "covsep/separability.hpp"
#include "covsep/types.hpp"

namespace covsep {

/// Parameters of the five-parameter family of 4-mode covariance matrices.
/// All five must be strictly positive; the derived sixth parameter is
/// d = (b*c + f) / a. The construction succeeds iff a < c*e.
struct FamilyParams {
    double a;
    double b;
    double c;
    double e;
    double f;

    FamilyParams(double a, double b, double c, double e, double f);

    double d() const { return (b * c + f) / a; }
};

/// The three 8x8 symmetry operators used to generate the orbit of the seed
/// vector. s and c are diagonal sign matrices, r is skew-symmetric with
/// r^2 = -identity.
struct SymmetryOperators {
    RealMatrix s;
    RealMatrix c;
    RealMatrix r;
};

SymmetryOperators symmetry_operators();

/// The seed null vector (-a, ib, c, -id, e, -if, 1, 0).
ComplexVector seed_vector(const FamilyParams& p);

/// Builds the covariance matrix from the parameters: the columns of Omega are
/// the orbit of the seed under {I, R, C, S, RC, RS, CS, RCS}, Lambda_1 is
/// -i*sigma*Omega_1, Lambda_k = G_k*Lambda_1, and gamma = Lambda*Omega^{-1}.
/// The result is verified real, symmetric, and a ppt covariance.
///
/// Throws ParamDomain when a >= c*e, SingularOrbit when Omega is numerically
/// singular, RealityFailure when the product fails to be real (which signals
/// a convention bug rather than a bad input).
RealMatrix build_gamma(const FamilyParams& p, const ToleranceConfig& tol = {});

/// Same construction starting from an explicit seed vector. gamma is
/// invariant under rescaling the seed by any nonzero complex scalar.
RealMatrix build_gamma_from_seed(const ComplexVector& omega1,
                                 const ToleranceConfig& tol = {});

/// Outcome of checking a candidate matrix against the defining properties of
/// the family. Boolean fields record individual checks; residual fields hold
/// the measured deviations behind them.
struct FamilyCheck {
    bool symmetric = false;
    bool commutes_with_symmetries = false;
    bool state_psd = false;
    bool unitary_equivalence = false;
    bool minimally_ppt = false;
    bool non_block_diagonal = false;
    bool bound_entangled = false;

    double symmetry_residual = 0.0;
    double commutation_residual = 0.0;
    double equivalence_residual = 0.0;
    RealVector form_eigenvalues;  // spectrum of gamma + i*sigma, ascending
    Verdict verdict = Verdict::Invalid;

    bool all_passed() const {
        return symmetric && commutes_with_symmetries && state_psd &&
               unitary_equivalence && minimally_ppt && non_block_diagonal &&
               bound_entangled;
    }
};

/// Checks an 8x8 matrix against the family properties: commutation with the
/// symmetry operators, positivity of gamma + i*sigma, unitary equivalence of
/// the two forms under S, minimal ppt-ness, non-block-diagonality, and the
/// bound-entangled classification. Never throws on a failing check; only a
/// wrong matrix size is an error.
FamilyCheck verify_family_member(const RealMatrix& gamma,
                                 const ToleranceConfig& tol = {});

}  // namespace covsep
