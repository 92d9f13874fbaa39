#include "covsep/phase_space.hpp"

namespace covsep {

SymplecticForm standard_symplectic(const SystemShape& shape) {
    const Index n = shape.dim();
    RealMatrix sigma = RealMatrix::Zero(n, n);
    for (int k = 0; k < shape.modes(); ++k) {
        sigma(2 * k, 2 * k + 1) = -1.0;
        sigma(2 * k + 1, 2 * k) = 1.0;
    }
    return {shape, std::move(sigma)};
}

RealMatrix partial_transpose_form(const SymplecticForm& form) {
    const Index na = form.shape.dim_a();
    RealMatrix tilde = form.sigma;
    tilde.topLeftCorner(na, na) *= -1.0;
    return tilde;
}

bool is_local_symplectic(const RealMatrix& s, const SymplecticForm& form, double tol) {
    const Index n = form.shape.dim();
    if (s.rows() != n || s.cols() != n)
        throw DimensionMismatch("matrix dimension does not match the phase space");
    const Index na = form.shape.dim_a();
    const Index nb = form.shape.dim_b();
    if (s.topRightCorner(na, nb).cwiseAbs().maxCoeff() > tol ||
        s.bottomLeftCorner(nb, na).cwiseAbs().maxCoeff() > tol)
        return false;
    return (s.transpose() * form.sigma * s - form.sigma).cwiseAbs().maxCoeff() <= tol;
}

RealMatrix alice_momentum_flip(const RealMatrix& gamma, const SystemShape& shape) {
    const Index n = shape.dim();
    if (gamma.rows() != n || gamma.cols() != n)
        throw DimensionMismatch("matrix dimension does not match the phase space");
    RealVector signs = RealVector::Ones(n);
    for (int k = 0; k < shape.f_a; ++k)
        signs(2 * k + 1) = -1.0;
    return signs.asDiagonal() * gamma * signs.asDiagonal();
}

RealMatrix cross_block(const RealMatrix& gamma, const SystemShape& shape) {
    const Index n = shape.dim();
    if (gamma.rows() != n || gamma.cols() != n)
        throw DimensionMismatch("matrix dimension does not match the phase space");
    return gamma.topRightCorner(shape.dim_a(), shape.dim_b());
}

}  // namespace covsep
