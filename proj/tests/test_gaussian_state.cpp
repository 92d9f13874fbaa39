#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covsep/errors.hpp"
#include "covsep/gaussian_state.hpp"
#include "covsep/numerics.hpp"
#include "covsep/phase_space.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace covsep;
using namespace covsep::testing;

TEST_CASE("validate accepts the two-mode vacuum and the integer matrix") {
    const ToleranceConfig tol;
    CHECK_NOTHROW(validate(RealMatrix::Identity(4, 4), {1, 1}, tol));
    CHECK_NOTHROW(validate(known_bound_entangled_2x2(), {2, 2}, tol));
}

TEST_CASE("validate rejects the zero matrix, asymmetry, and size mismatches") {
    const ToleranceConfig tol;
    CHECK_THROWS_AS(validate(RealMatrix::Zero(4, 4), {1, 1}, tol), NotAState);

    RealMatrix asym = RealMatrix::Identity(4, 4);
    asym(0, 1) = 0.1;
    CHECK_THROWS_AS(validate(asym, {1, 1}, tol), NotSymmetric);

    CHECK_THROWS_AS(validate(RealMatrix::Identity(6, 6), {1, 1}, tol), DimensionMismatch);
}

TEST_CASE("check_state reports the most negative eigenvalue for invalid input") {
    const ToleranceConfig tol;
    const ValidationReport report = check_state(RealMatrix::Zero(4, 4), {1, 1}, tol);
    CHECK_FALSE(report.ok);
    CHECK(report.failure == ValidationReport::Failure::NotAState);
    CHECK(report.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(report.worst_eigenvector.size() == 4);
}

TEST_CASE("purity via the square identity and via null dimension") {
    const ToleranceConfig tol;
    const GaussianState vacuum = validate(RealMatrix::Identity(4, 4), {1, 1}, tol);
    CHECK(is_pure(vacuum, tol));

    const GaussianState thermal = validate(2.0 * RealMatrix::Identity(4, 4), {1, 1}, tol);
    CHECK_FALSE(is_pure(thermal, tol));

    const GaussianState integer_state =
        validate(known_bound_entangled_2x2(), {2, 2}, tol);
    CHECK_FALSE(is_pure(integer_state, tol));
}

TEST_CASE("both purity characterizations agree on random pure and impure states") {
    const ToleranceConfig tol;
    std::mt19937_64 rng(31);
    const SystemShape shape{1, 2};
    for (int trial = 0; trial < 100; ++trial) {
        const RealMatrix pure = random_pure_covariance(shape, rng);
        CHECK(is_pure(validate(pure, shape, tol), tol));

        RealMatrix impure = pure + 0.5 * RealMatrix::Identity(6, 6);
        CHECK_FALSE(is_pure(validate(impure, shape, tol), tol));
    }
}

TEST_CASE("characteristic function values") {
    const ToleranceConfig tol;
    const GaussianState vacuum = validate(RealMatrix::Identity(4, 4), {1, 1}, tol);

    CHECK(characteristic_value(vacuum, RealVector::Zero(4)) == Complex(1.0, 0.0));

    RealVector xi = RealVector::Zero(4);
    xi(0) = 2.0;
    CHECK(std::abs(characteristic_value(vacuum, xi) - Complex(std::exp(-1.0), 0.0)) <=
          1e-14);

    RealVector mean = RealVector::Zero(4);
    mean(0) = 1.0;
    const GaussianState shifted =
        validate(RealMatrix::Identity(4, 4), {1, 1}, tol, mean);
    std::mt19937_64 rng(32);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        RealVector probe(4);
        for (Index i = 0; i < 4; ++i)
            probe(i) = normal(rng);
        const Complex with_mean = characteristic_value(shifted, probe);
        const Complex no_mean = characteristic_value(vacuum, probe);
        CHECK(std::abs(with_mean) == doctest::Approx(std::abs(no_mean)).epsilon(1e-12));
        CHECK(std::abs(characteristic_value(shifted, RealVector(-probe)) -
                       std::conj(with_mean)) <= 1e-14);
        CHECK(std::abs(with_mean) <= 1.0 + 1e-15);
    }
}

TEST_CASE("validity of gamma + i*sigma implies gamma itself is PSD") {
    const ToleranceConfig tol;
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemShape shape{1 + trial % 2, 1 + (trial / 2) % 2};
        const RealMatrix gamma = random_valid_covariance(shape, rng);
        CHECK_NOTHROW(validate(gamma, shape, tol));
        CHECK(is_psd(gamma.cast<Complex>(), tol));
    }
}

TEST_CASE("mixture covariance for a single component is the component itself") {
    const ToleranceConfig tol;
    MixtureComponent only;
    only.weight = 1.0;
    only.gamma = RealMatrix::Identity(4, 4);
    only.mean = RealVector::Zero(4);
    only.mean(0) = 0.7;
    const MixtureMoments moments = mixture_covariance({only}, {1, 1}, tol);
    CHECK((moments.gamma - only.gamma).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(moments.delta.cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((moments.mean - only.mean).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("mixture of two shifted vacua reproduces the rank-one update") {
    const ToleranceConfig tol;
    MixtureComponent plus, minus;
    plus.weight = minus.weight = 0.5;
    plus.gamma = minus.gamma = RealMatrix::Identity(4, 4);
    plus.mean = RealVector::Zero(4);
    minus.mean = RealVector::Zero(4);
    plus.mean(0) = 1.0;
    minus.mean(0) = -1.0;

    const MixtureMoments moments = mixture_covariance({plus, minus}, {1, 1}, tol);
    RealMatrix expected_delta = RealMatrix::Zero(4, 4);
    expected_delta(0, 0) = 2.0;
    CHECK((moments.delta - expected_delta).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((moments.gamma - (RealMatrix::Identity(4, 4) + expected_delta))
              .cwiseAbs()
              .maxCoeff() <= 1e-14);
    CHECK(moments.mean.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("mixtures with all means zero have vanishing delta") {
    const ToleranceConfig tol;
    std::mt19937_64 rng(34);
    const SystemShape shape{1, 1};
    std::vector<MixtureComponent> mixture = random_product_mixture(shape, rng, 3);
    for (MixtureComponent& component : mixture)
        component.mean.setZero();
    const MixtureMoments moments = mixture_covariance(mixture, shape, tol);
    CHECK(moments.delta.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("mixture delta stays PSD over random product mixtures") {
    const ToleranceConfig tol;
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemShape shape{1 + trial % 2, 1 + (trial / 3) % 2};
        const int count = 2 + trial % 4;
        const auto mixture = random_product_mixture(shape, rng, count);
        const MixtureMoments moments = mixture_covariance(mixture, shape, tol);
        const double scale = std::max(1.0, moments.delta.norm());
        CHECK(min_eigenvalue_oracle(moments.delta.cast<Complex>()) >= -1e-10 * scale);
    }
}

TEST_CASE("mixture rejects bad weights, shapes, and non-product components") {
    const ToleranceConfig tol;
    MixtureComponent a;
    a.weight = 0.5;
    a.gamma = RealMatrix::Identity(4, 4);
    a.mean = RealVector::Zero(4);

    CHECK_THROWS_AS(mixture_covariance({a}, {1, 1}, tol), Error);

    MixtureComponent b = a;
    b.gamma = RealMatrix::Identity(6, 6);
    b.mean = RealVector::Zero(6);
    CHECK_THROWS_AS(mixture_covariance({a, b}, {1, 1}, tol), Error);

    MixtureComponent entangled = a;
    entangled.weight = 0.5;
    entangled.gamma = two_mode_squeezed(2.0);
    CHECK_THROWS_AS(mixture_covariance({a, entangled}, {1, 1}, tol), Error);
}
