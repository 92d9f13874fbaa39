#pragma once

#include "covsep/types.hpp"

namespace covsep {

/// The canonical antisymmetric form on a bipartite phase space, block
/// diagonal over the A/B split, with one 2x2 block [[0,-1],[1,0]] per
/// canonical (q,p) pair.
struct SymplecticForm {
    SystemShape shape;
    RealMatrix sigma;
};

/// Coordinate order is (q_A1, p_A1, ..., q_Afa, p_Afa, q_B1, p_B1, ...).
SymplecticForm standard_symplectic(const SystemShape& shape);

/// sigma_tilde = (-sigma_A) (+) sigma_B: Alice's block negated, Bob's kept.
RealMatrix partial_transpose_form(const SymplecticForm& form);

/// True iff s is block diagonal over the A/B split and s^T sigma s = sigma,
/// both within tol (max-norm).
bool is_local_symplectic(const RealMatrix& s, const SymplecticForm& form, double tol = 1e-9);

/// Covariance-level partial transpose: flips the sign of every entry with
/// exactly one index on one of Alice's momentum coordinates.
RealMatrix alice_momentum_flip(const RealMatrix& gamma, const SystemShape& shape);

/// The 2f_a x 2f_b block coupling Alice's and Bob's coordinates.
RealMatrix cross_block(const RealMatrix& gamma, const SystemShape& shape);

}  // namespace covsep
