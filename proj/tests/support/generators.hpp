#pragma once

// Random-instance builders for property tests: symplectic matrices through a
// small matrix exponential, thermal and separable covariances, product-state
// mixtures, and family parameter samples.

#include <cmath>
#include <random>
#include <vector>

#include "covsep/family.hpp"
#include "covsep/gaussian_state.hpp"
#include "covsep/phase_space.hpp"
#include "covsep/types.hpp"

namespace covsep::testing {

/// Matrix exponential by scaling, truncated Taylor series, and repeated
/// squaring. Accurate to near machine precision for the moderate norms used
/// in these tests.
inline RealMatrix taylor_expm(RealMatrix m) {
    int squarings = 0;
    while (m.norm() > 0.25 && squarings < 60) {
        m *= 0.5;
        ++squarings;
    }
    const Index n = m.rows();
    RealMatrix result = RealMatrix::Identity(n, n);
    RealMatrix term = RealMatrix::Identity(n, n);
    for (int k = 1; k <= 20; ++k) {
        term = term * m / static_cast<double>(k);
        result += term;
    }
    for (int k = 0; k < squarings; ++k)
        result = result * result;
    return result;
}

inline RealMatrix random_symmetric(Index n, std::mt19937_64& rng, double amplitude) {
    std::normal_distribution<double> normal(0.0, amplitude);
    RealMatrix x(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index k = 0; k < n; ++k)
            x(i, k) = normal(rng);
    return 0.5 * (x + x.transpose().eval());
}

/// Random symplectic matrix exp(sigma * A) for symmetric A; preserves sigma
/// exactly in exact arithmetic.
inline RealMatrix random_symplectic(const RealMatrix& sigma, std::mt19937_64& rng,
                                    double amplitude = 0.3) {
    return taylor_expm(sigma * random_symmetric(sigma.rows(), rng, amplitude));
}

/// Random local symplectic: block-diagonal generator, hence a block-diagonal
/// exponential acting separately on the two sides.
inline RealMatrix random_local_symplectic(const SystemShape& shape, std::mt19937_64& rng,
                                          double amplitude = 0.3) {
    const RealMatrix sigma = standard_symplectic(shape).sigma;
    const Index na = shape.dim_a();
    const Index nb = shape.dim_b();
    RealMatrix a = RealMatrix::Zero(shape.dim(), shape.dim());
    a.topLeftCorner(na, na) = random_symmetric(na, rng, amplitude);
    a.bottomRightCorner(nb, nb) = random_symmetric(nb, rng, amplitude);
    return taylor_expm(sigma * a);
}

/// Diagonal covariance with one symplectic eigenvalue per mode, each >= 1.
inline RealMatrix thermal_diagonal(int modes, std::mt19937_64& rng, double nu_min,
                                   double nu_max) {
    std::uniform_real_distribution<double> uniform(nu_min, nu_max);
    RealVector d(2 * modes);
    for (int k = 0; k < modes; ++k) {
        const double nu = uniform(rng);
        d(2 * k) = nu;
        d(2 * k + 1) = nu;
    }
    return RealMatrix(d.asDiagonal());
}

/// Separable ppt covariance S * D * S^T with local symplectic S and diagonal
/// D >= 1; block diagonal structure is preserved by the local conjugation.
inline RealMatrix random_separable_covariance(const SystemShape& shape,
                                              std::mt19937_64& rng, double nu_min = 1.0,
                                              double nu_max = 3.0) {
    const RealMatrix s = random_local_symplectic(shape, rng);
    const RealMatrix d = thermal_diagonal(shape.modes(), rng, nu_min, nu_max);
    RealMatrix g = s * d * s.transpose();
    return 0.5 * (g + g.transpose().eval());
}

/// Valid covariance S * D * S^T with a global symplectic S; possibly
/// entangled.
inline RealMatrix random_valid_covariance(const SystemShape& shape, std::mt19937_64& rng,
                                          double nu_min = 1.0, double nu_max = 3.0) {
    const RealMatrix sigma = standard_symplectic(shape).sigma;
    const RealMatrix s = random_symplectic(sigma, rng);
    const RealMatrix d = thermal_diagonal(shape.modes(), rng, nu_min, nu_max);
    RealMatrix g = s * d * s.transpose();
    return 0.5 * (g + g.transpose().eval());
}

/// Pure-state covariance S * S^T for a random global symplectic S.
inline RealMatrix random_pure_covariance(const SystemShape& shape, std::mt19937_64& rng) {
    const RealMatrix sigma = standard_symplectic(shape).sigma;
    const RealMatrix s = random_symplectic(sigma, rng);
    RealMatrix g = s * s.transpose();
    return 0.5 * (g + g.transpose().eval());
}

/// Mixture of product states with random weights, means, and block-diagonal
/// component covariances.
inline std::vector<MixtureComponent> random_product_mixture(const SystemShape& shape,
                                                            std::mt19937_64& rng,
                                                            int components) {
    std::uniform_real_distribution<double> uniform(0.2, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> weights(static_cast<std::size_t>(components));
    double total = 0.0;
    for (double& w : weights) {
        w = uniform(rng);
        total += w;
    }

    std::vector<MixtureComponent> mixture;
    mixture.reserve(weights.size());
    for (double w : weights) {
        MixtureComponent component;
        component.weight = w / total;
        component.gamma = random_separable_covariance(shape, rng, 1.0, 2.5);
        component.mean = RealVector(shape.dim());
        for (Index i = 0; i < component.mean.size(); ++i)
            component.mean(i) = normal(rng);
        mixture.push_back(std::move(component));
    }
    return mixture;
}

/// Family parameters log-uniform in [0.1, 10], rejected until a < 0.999*c*e
/// so the orbit matrix stays well conditioned.
inline FamilyParams random_family_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> exponent(-1.0, 1.0);
    auto draw = [&] { return std::pow(10.0, exponent(rng)); };
    for (;;) {
        const double a = draw(), b = draw(), c = draw(), e = draw(), f = draw();
        if (a < 0.999 * c * e)
            return FamilyParams(a, b, c, e, f);
    }
}

}  // namespace covsep::testing
