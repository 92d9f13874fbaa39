#pragma once

#include <vector>

#include "covsep/types.hpp"

namespace covsep {

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvectors orthonormal columns in matching order.
struct EigenSystem {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Relative singular-value cutoff used when orthonormalizing real
/// spanning sets (real_part_span, span_union).
inline constexpr double kSpanRankTol = 1e-10;

/// Deterministic dense eigendecomposition (tridiagonalization + implicit QL).
/// Throws NotHermitian if the hermiticity residual exceeds herm_tol relative
/// to max(1, largest |entry|), NonFiniteInput on NaN/Inf.
EigenSystem hermitian_eigen(const ComplexMatrix& m, double herm_tol = 1e-12);

/// min eigenvalue >= -rtol * max(1, max eigenvalue).
bool is_psd(const ComplexMatrix& m, const ToleranceConfig& tol);

/// Orthonormal basis (columns) of the span of eigenvectors with eigenvalue
/// <= ntol * (max eigenvalue). Input must be PSD per is_psd; throws NotPsd
/// otherwise. May return a matrix with zero columns.
ComplexMatrix null_space(const ComplexMatrix& m, const ToleranceConfig& tol);

/// Moore-Penrose pseudoinverse of a Hermitian PSD matrix. Eigenvalues below
/// the ntol cutoff are treated as exactly zero.
ComplexMatrix pseudoinverse(const ComplexMatrix& m, const ToleranceConfig& tol);

/// A subspace of R^n held as an orthonormal column basis.
class RealSubspace {
  public:
    RealSubspace(Index ambient_dim, RealMatrix basis);
    static RealSubspace zero(Index ambient_dim);

    Index ambient_dim() const { return ambient_dim_; }
    Index dim() const { return basis_.cols(); }
    const RealMatrix& basis() const { return basis_; }

    /// ||v - P v|| <= tol * ||v||, with P the orthogonal projector onto *this.
    bool contains(const RealVector& v, double tol = 1e-8) const;

  private:
    Index ambient_dim_;
    RealMatrix basis_;
};

/// Orthonormal basis of span{Re v, Im v : v column of vectors}. For a
/// complex-linear input space the imaginary parts add nothing new, but they
/// are included so the operation is correct on arbitrary vector lists.
RealSubspace real_part_span(const ComplexMatrix& vectors);

/// Smallest subspace containing both arguments.
RealSubspace span_union(const RealSubspace& a, const RealSubspace& b);

/// Orthonormal basis of the orthogonal complement, produced by a fixed-order
/// Householder QR so repeated runs agree bit-for-bit.
RealSubspace orthogonal_complement(const RealSubspace& s);

}  // namespace covsep
