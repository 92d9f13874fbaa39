#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

#include "covsep/errors.hpp"

namespace covsep {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Bipartition of canonical degrees of freedom: f_a modes for Alice,
/// f_b for Bob. Fixes the phase-space dimension 2(f_a+f_b) and the
/// coordinate layout (q,p interleaved per mode, Alice modes first).
struct SystemShape {
    int f_a = 1;
    int f_b = 1;

    SystemShape() = default;
    SystemShape(int fa, int fb) : f_a(fa), f_b(fb) {
        if (fa < 1 || fb < 1)
            throw DimensionMismatch("SystemShape requires at least one mode per party");
    }

    int modes() const { return f_a + f_b; }
    Index dim() const { return 2 * static_cast<Index>(f_a + f_b); }
    Index dim_a() const { return 2 * static_cast<Index>(f_a); }
    Index dim_b() const { return 2 * static_cast<Index>(f_b); }

    bool operator==(const SystemShape&) const = default;
};

/// Relative tolerances shared by every test in the library.
///   rtol     - slack for positive-semidefiniteness decisions
///   ntol     - null-space eigenvalue cutoff, relative to the largest eigenvalue
///   btol     - block-off-diagonal cutoff, relative to the Frobenius norm
///   herm_tol - symmetry / hermiticity residual cutoff
struct ToleranceConfig {
    double rtol = 1e-9;
    double ntol = 1e-7;
    double btol = 1e-7;
    double herm_tol = 1e-12;

    void require_valid() const {
        for (double t : {rtol, ntol, btol, herm_tol})
            if (!(t > 0.0 && t < 1.0))
                throw Error("tolerances must lie strictly between 0 and 1");
    }
};

}  // namespace covsep
