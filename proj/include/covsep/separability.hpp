#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "covsep/gaussian_state.hpp"
#include "covsep/numerics.hpp"
#include "covsep/phase_space.hpp"
#include "covsep/types.hpp"

namespace covsep {

/// Real symmetric gamma with both gamma + i*sigma and gamma + i*sigma_tilde
/// positive semidefinite. Construct through make_ppt_covariance.
struct PptCovariance {
    SystemShape shape;
    RealMatrix gamma;
};

/// Throws NotSymmetric / NotAState / NotPpt when the invariants fail.
PptCovariance make_ppt_covariance(const RealMatrix& gamma, const SystemShape& shape,
                                  const ToleranceConfig& tol);

/// Positivity of the partial transpose: gamma + i*sigma_tilde PSD.
bool is_ppt(const GaussianState& state, const ToleranceConfig& tol);
bool is_ppt_matrix(const RealMatrix& gamma, const SystemShape& shape,
                   const ToleranceConfig& tol);

/// Block-diagonal lower bound certifying separability:
/// gamma >= gamma_a (+) gamma_b with each block a valid covariance matrix.
struct SeparabilityWitness {
    RealMatrix gamma_a;
    RealMatrix gamma_b;
};

/// True iff gamma_a + i*sigma_A, gamma_b + i*sigma_B and
/// gamma - (gamma_a (+) gamma_b) are all PSD. A true result certifies that
/// the Gaussian state with covariance gamma is separable.
bool verify_witness(const RealMatrix& gamma, const SystemShape& shape,
                    const SeparabilityWitness& witness, const ToleranceConfig& tol);

/// Null spaces N = null(gamma + i*sigma) and Nt = null(gamma + i*sigma_tilde),
/// the spans of their real parts, and the dimension of the joint span.
struct NullSpaceReport {
    ComplexMatrix n_basis;
    ComplexMatrix nt_basis;
    RealSubspace re_n;
    RealSubspace re_nt;
    RealSubspace joint;
    int joint_span_dim = 0;
};

NullSpaceReport null_space_report(const PptCovariance& g, const ToleranceConfig& tol);

/// Minimality criterion: the real parts of the two null spaces together span
/// the whole phase space. A minimally ppt matrix admits no distinct
/// ppt-covariance below it in the matrix order.
bool is_minimally_ppt(const PptCovariance& g, const ToleranceConfig& tol);

struct SubtractionStep {
    RealVector xi;
    double epsilon = 0.0;
};

struct StepResult {
    PptCovariance next;
    SubtractionStep step;
};

/// One descent step: pick the first deterministic basis vector xi of the
/// orthogonal complement of span(Re N, Re Nt), subtract the largest multiple
/// of xi xi^T keeping both forms PSD. That multiple is
/// epsilon = min over M in {gamma+i*sigma, gamma+i*sigma_tilde} of
/// 1/(xi^T M^+ xi). Throws AlreadyMinimal when there is no admissible xi and
/// NumericalStall when both quadratic forms come out nonpositive.
StepResult subtract_rank_one_step(const PptCovariance& g, const ToleranceConfig& tol);

/// Same step along a caller-chosen direction. xi must be orthogonal to the
/// joint null span (checked), which places it in the support of both forms.
StepResult subtract_rank_one_step(const PptCovariance& g, const RealVector& xi,
                                  const ToleranceConfig& tol);

struct MinimizeOptions {
    int max_steps = 0;        // 0 selects the default 8f
    bool random_xi = false;   // seeded random complement direction, for robustness tests
    std::uint64_t seed = 0;
};

struct MinimizeResult {
    PptCovariance minimal;
    std::vector<SubtractionStep> trace;
};

/// Repeated rank-one subtraction until the minimality criterion holds. Every
/// step strictly increases the combined complex null dimension, so the loop
/// finishes within 4f steps; a step that fails to do so is recomputed once
/// with the null cutoff relaxed 10x before giving up with MaxStepsExceeded.
MinimizeResult minimize_ppt(const PptCovariance& g, const ToleranceConfig& tol,
                            const MinimizeOptions& options = {});

/// Frobenius norm of the A-B coupling block <= btol * max(1, ||gamma||_F).
bool is_block_diagonal(const RealMatrix& gamma, const SystemShape& shape,
                       const ToleranceConfig& tol);

struct PureFactor {
    PptCovariance reduced;   // on X_A (+) X_B minus the extracted pair
    RealMatrix pure_block;   // 2x2 covariance of the extracted Bob mode
};

/// If the two null spaces intersect nontrivially, the intersection vector is
/// supported on Bob's side and marks a pure one-mode factor. The factor is
/// split off by extending its plane to a canonical basis of X_B (symplectic
/// Gram-Schmidt) and transforming gamma; the reduced matrix is again a
/// ppt-covariance, and stays minimally ppt when the input was. Returns
/// nullopt when the intersection is trivial; throws FactorizationResidual
/// when the cross block fails to vanish.
std::optional<PureFactor> extract_pure_factor(const PptCovariance& g,
                                              const ToleranceConfig& tol);

enum class Verdict {
    Invalid,
    NptEntangled,
    Separable,
    BoundEntangled,
    PptUndecided,
};

std::string_view to_string(Verdict v);

/// Violated-eigenvalue record backing Invalid and NptEntangled verdicts.
struct ViolationRecord {
    ValidationReport::Failure kind = ValidationReport::Failure::None;
    bool partial_transpose = false;  // true when the violated form is gamma + i*sigma_tilde
    double value = 0.0;              // min eigenvalue, or max asymmetry for NotSymmetric
    ComplexVector eigenvector;
};

/// Verdict plus a machine-checkable certificate. Which fields are populated
/// depends on the verdict:
///   Invalid       -> violation
///   NptEntangled  -> violation (partial_transpose = true)
///   Separable     -> witness (absent only when tolerance_warning is set),
///                    plus the descent trace when one was run
///   BoundEntangled-> report (input is minimally ppt and not block diagonal)
///   PptUndecided  -> minimal_point + report + trace: a certified
///                    bound-entangled point BELOW gamma, which does not
///                    decide gamma itself
struct Classification {
    Verdict verdict = Verdict::Invalid;
    std::optional<ViolationRecord> violation;
    std::optional<SeparabilityWitness> witness;
    std::optional<NullSpaceReport> report;
    std::optional<RealMatrix> minimal_point;
    std::vector<SubtractionStep> trace;
    bool tolerance_warning = false;
};

/// Decision procedure over a raw square matrix:
///   1. not a valid covariance          -> Invalid
///   2. gamma + i*sigma_tilde not PSD   -> NptEntangled
///   3. ppt and 1xN or Nx1 shape        -> Separable (ppt implies separability
///      there); witness from the descent's block-diagonal endpoint
///   4. ppt, >= 2 modes per side, minimally ppt, not block diagonal
///                                      -> BoundEntangled
///   5. ppt, minimally ppt, block diagonal -> Separable (own blocks)
///   6. ppt, not minimal -> descend; block-diagonal endpoint -> Separable,
///      otherwise PptUndecided
Classification classify(const RealMatrix& gamma, const SystemShape& shape,
                        const ToleranceConfig& tol);

}  // namespace covsep
