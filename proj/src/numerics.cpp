#include "covsep/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace covsep {

namespace {

double abs_scale(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square_finite(const ComplexMatrix& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("matrix must be square");
    if (!m.allFinite())
        throw NonFiniteInput("matrix has non-finite entries");
}

// Orthonormal basis of the column range, rank decided at kSpanRankTol
// relative to the largest singular value. Jacobi SVD: deterministic.
RealMatrix orthonormal_range(const RealMatrix& w) {
    if (w.cols() == 0)
        return RealMatrix(w.rows(), 0);
    Eigen::JacobiSVD<RealMatrix> svd(w, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0)
        return RealMatrix(w.rows(), 0);
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > kSpanRankTol * sv(0))
        ++rank;
    return svd.matrixU().leftCols(rank);
}

}  // namespace

EigenSystem hermitian_eigen(const ComplexMatrix& m, double herm_tol) {
    require_square_finite(m);
    const double scale = std::max(1.0, abs_scale(m));
    const double residual = abs_scale(m - m.adjoint());
    if (residual > herm_tol * scale)
        throw NotHermitian("matrix is not Hermitian within tolerance", residual);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint().eval()));
    if (solver.info() != Eigen::Success)
        throw Error("hermitian eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

bool is_psd(const ComplexMatrix& m, const ToleranceConfig& tol) {
    if (m.rows() == 0)
        return true;
    const EigenSystem es = hermitian_eigen(m, tol.herm_tol);
    const double lmin = es.eigenvalues(0);
    const double lmax = es.eigenvalues(es.eigenvalues.size() - 1);
    return lmin >= -tol.rtol * std::max(1.0, lmax);
}

ComplexMatrix null_space(const ComplexMatrix& m, const ToleranceConfig& tol) {
    const EigenSystem es = hermitian_eigen(m, tol.herm_tol);
    const double lmin = es.eigenvalues(0);
    const double lmax = es.eigenvalues(es.eigenvalues.size() - 1);
    if (lmin < -tol.rtol * std::max(1.0, lmax))
        throw NotPsd("null_space requires a PSD matrix", lmin);

    const double cutoff = tol.ntol * std::max(lmax, 0.0);
    Index count = 0;
    while (count < es.eigenvalues.size() && es.eigenvalues(count) <= cutoff)
        ++count;
    return es.eigenvectors.leftCols(count);
}

ComplexMatrix pseudoinverse(const ComplexMatrix& m, const ToleranceConfig& tol) {
    const EigenSystem es = hermitian_eigen(m, tol.herm_tol);
    const double lmin = es.eigenvalues(0);
    const double lmax = es.eigenvalues(es.eigenvalues.size() - 1);
    if (lmin < -tol.rtol * std::max(1.0, lmax))
        throw NotPsd("pseudoinverse requires a PSD matrix", lmin);

    const double cutoff = tol.ntol * std::max(lmax, 0.0);
    RealVector inv = RealVector::Zero(es.eigenvalues.size());
    for (Index k = 0; k < es.eigenvalues.size(); ++k)
        if (es.eigenvalues(k) > cutoff)
            inv(k) = 1.0 / es.eigenvalues(k);
    ComplexMatrix p = es.eigenvectors * inv.asDiagonal() * es.eigenvectors.adjoint();
    return 0.5 * (p + p.adjoint().eval());
}

RealSubspace::RealSubspace(Index ambient_dim, RealMatrix basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
    if (basis_.rows() != ambient_dim_ || basis_.cols() > ambient_dim_)
        throw DimensionMismatch("subspace basis does not fit the ambient dimension");
    if (basis_.cols() > 0) {
        RealMatrix gram = basis_.transpose() * basis_;
        gram.diagonal().array() -= 1.0;
        if (gram.cwiseAbs().maxCoeff() > 1e-12)
            throw Error("subspace basis is not orthonormal");
    }
}

RealSubspace RealSubspace::zero(Index ambient_dim) {
    return RealSubspace(ambient_dim, RealMatrix(ambient_dim, 0));
}

bool RealSubspace::contains(const RealVector& v, double tol) const {
    if (v.size() != ambient_dim_)
        throw DimensionMismatch("vector dimension does not match subspace");
    const double n = v.norm();
    if (n == 0.0)
        return true;
    const RealVector residual = v - basis_ * (basis_.transpose() * v);
    return residual.norm() <= tol * n;
}

RealSubspace real_part_span(const ComplexMatrix& vectors) {
    const Index n = vectors.rows();
    RealMatrix w(n, 2 * vectors.cols());
    w << vectors.real(), vectors.imag();
    return RealSubspace(n, orthonormal_range(w));
}

RealSubspace span_union(const RealSubspace& a, const RealSubspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("span_union over different ambient spaces");
    RealMatrix w(a.ambient_dim(), a.dim() + b.dim());
    w << a.basis(), b.basis();
    return RealSubspace(a.ambient_dim(), orthonormal_range(w));
}

RealSubspace orthogonal_complement(const RealSubspace& s) {
    const Index n = s.ambient_dim();
    const Index r = s.dim();
    if (r == 0)
        return RealSubspace(n, RealMatrix::Identity(n, n));
    Eigen::HouseholderQR<RealMatrix> qr(s.basis());
    const RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
    return RealSubspace(n, q.rightCols(n - r));
}

}  // namespace covsep
