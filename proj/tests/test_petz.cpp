#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "gausspetz/petz.hpp"
#include "gausspetz/sampling.hpp"
#include "test_helpers.hpp"

using namespace gausspetz;
using gausspetz::testing::max_abs;
using gausspetz::testing::symplectic_defect;

namespace {

// Random instance with a faithful channel output, suitable for petz_channel.
struct Instance {
    GaussianState sigma;
    GaussianChannel channel;
};

Instance random_instance(Rng& rng, int n_modes) {
    while (true) {
        GaussianState sigma = random_state(rng, n_modes, 1.05, 3.0, 1.0);
        GaussianChannel channel = random_cp_channel(rng, n_modes);
        const GaussianState out = apply(channel, sigma);
        if (symplectic_eigenvalues(out.cov).minCoeff() > 1.0 + 1e-6) {
            return Instance{std::move(sigma), std::move(channel)};
        }
    }
}

}  // namespace

TEST_SUITE("petz") {

TEST_CASE("identity channel is its own recovery") {
    const GaussianState sigma = GaussianState::thermal(1, 3.0);
    const PetzConstruction petz =
        petz_channel(sigma, GaussianChannel::identity(1));
    CHECK(max_abs(petz.channel.X - Matrix::Identity(2, 2)) < 1e-12);
    CHECK(max_abs(petz.channel.Y) < 1e-12);
    CHECK(max_abs(petz.channel.delta) < 1e-12);
}

TEST_CASE("thermal state through a balanced loss") {
    const GaussianState sigma = GaussianState::thermal(1, 3.0);
    const PetzConstruction petz = petz_channel(sigma, GaussianChannel::loss(0.5));

    // Quantum-limited amplifier with gain 4/3.
    const double gain_factor = 2.0 / std::sqrt(3.0);
    CHECK(max_abs(petz.channel.X - gain_factor * Matrix::Identity(2, 2)) <
          1e-12);
    CHECK(max_abs(petz.channel.Y - (1.0 / 3.0) * Matrix::Identity(2, 2)) <
          1e-12);
    CHECK(max_abs(petz.channel.delta) < 1e-14);
    CHECK(petz.cp_min_eigenvalue == doctest::Approx(0.0).epsilon(1e-10));

    // Forced displacement when the channel shifts the anchor.
    Vector d(2);
    d << 1.0, 0.0;
    GaussianChannel shifted_loss = GaussianChannel::loss(0.5);
    shifted_loss.delta = d;
    const PetzConstruction shifted = petz_channel(sigma, shifted_loss);
    CHECK(shifted.channel.delta(0) == doctest::Approx(-gain_factor));
    CHECK(shifted.channel.delta(1) == doctest::Approx(0.0));
}

TEST_CASE("faithfulness hypothesis is enforced") {
    // A unitary channel keeps a pure state pure.
    const GaussianState vacuum = GaussianState::vacuum(1);
    CHECK_THROWS_AS(petz_channel(vacuum, GaussianChannel::phase_rotation(0.3)),
                    std::domain_error);
    CHECK_THROWS_WITH_AS(
        petz_channel(vacuum, GaussianChannel::identity(1)),
        doctest::Contains("faithful"), std::domain_error);
}

TEST_CASE("reversal anchor on random instances") {
    Rng rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 3;
        const Instance instance = random_instance(rng, n);
        const PetzConstruction petz = petz_channel(instance.sigma,
                                                   instance.channel);
        const GaussianState recovered = apply(petz.channel, petz.sigma_out);
        CHECK(max_abs(recovered.cov - instance.sigma.cov) < 1e-10);
        CHECK(max_abs(recovered.mean - instance.sigma.mean) < 1e-10);
        CHECK(petz.cp_min_eigenvalue >= -1e-9);
    }
}

TEST_CASE("pure directions in sigma are allowed") {
    // Squeezed vacuum anchor; classical noise keeps the output faithful.
    Matrix cov = Matrix::Zero(2, 2);
    cov(0, 0) = std::exp(1.0);
    cov(1, 1) = std::exp(-1.0);
    const GaussianState sigma(Vector::Zero(2), cov);
    const GaussianChannel noise =
        GaussianChannel::classical_noise(0.5 * Matrix::Identity(2, 2));
    const PetzConstruction petz = petz_channel(sigma, noise);
    const GaussianState recovered = apply(petz.channel, petz.sigma_out);
    CHECK(max_abs(recovered.cov - sigma.cov) < 1e-10);
    CHECK(petz.cp_min_eigenvalue >= -1e-9);
}

TEST_CASE("rectangular channel (partial trace) still has a recovery") {
    // Keep mode 1 of 2: X is 2x4.
    Matrix keep = Matrix::Zero(2, 4);
    keep(0, 0) = 1.0;
    keep(1, 2) = 1.0;
    const GaussianChannel partial(keep, 0.5 * Matrix::Identity(2, 2),
                                  Vector::Zero(2));
    Rng rng(55);
    const GaussianState sigma = random_state(rng, 2, 1.2, 2.5, 0.5);
    const PetzConstruction petz = petz_channel(sigma, partial);
    CHECK(petz.channel.n_in() == 1);
    CHECK(petz.channel.n_out() == 2);
    const GaussianState recovered = apply(petz.channel, petz.sigma_out);
    CHECK(max_abs(recovered.cov - sigma.cov) < 1e-10);
    CHECK(max_abs(recovered.mean - sigma.mean) < 1e-10);
    CHECK(petz.cp_min_eigenvalue >= -1e-9);
}

TEST_CASE("symplectic flow") {
    const GaussianState sigma = GaussianState::thermal(1, 3.0);
    CHECK(max_abs(symplectic_flow(sigma, 0.0).matrix -
                  Matrix::Identity(2, 2)) < 1e-14);

    // Isotropic thermal state: rotation by h = log 2 per unit time.
    const double h = std::log(2.0);
    const Matrix expected = std::cos(h) * Matrix::Identity(2, 2) +
                            std::sin(h) * symplectic_form(1);
    CHECK(max_abs(symplectic_flow(sigma, 1.0).matrix - expected) < 1e-12);

    Rng rng(66);
    for (int trial = 0; trial < 20; ++trial) {
        const GaussianState state = random_state(rng, 2, 1.1, 3.0, 0.0);
        const double t = rng.uniform(-2.0, 2.0);
        const Matrix flow = symplectic_flow(state, t).matrix;
        CHECK(symplectic_defect(flow) < 1e-12);
        CHECK(max_abs(flow * symplectic_flow(state, -t).matrix -
                      Matrix::Identity(4, 4)) < 1e-11);
    }

    CHECK_THROWS_AS(symplectic_flow(GaussianState::vacuum(1), 1.0),
                    std::domain_error);
}

TEST_CASE("rotated recovery channel") {
    const GaussianState sigma = GaussianState::thermal(1, 3.0);
    const GaussianChannel loss = GaussianChannel::loss(0.5);

    SUBCASE("t = 0 reproduces the plain construction exactly") {
        const PetzConstruction base = petz_channel(sigma, loss);
        const PetzConstruction rotated = rotated_petz(sigma, loss, 0.0);
        CHECK(max_abs(rotated.channel.X - base.channel.X) == 0.0);
        CHECK(max_abs(rotated.channel.Y - base.channel.Y) == 0.0);
        CHECK(max_abs(rotated.channel.delta - base.channel.delta) == 0.0);
    }

    SUBCASE("isotropic noise block is rotation invariant") {
        const PetzConstruction rotated = rotated_petz(sigma, loss, 1.0);
        CHECK(max_abs(rotated.channel.Y -
                      (1.0 / 3.0) * Matrix::Identity(2, 2)) < 1e-12);
        CHECK(rotated.cp_min_eigenvalue >= -1e-9);
    }

    SUBCASE("reversal holds for every t") {
        Rng rng(77);
        for (const double t : {-1.0, 0.5, 2.0}) {
            const Instance instance = random_instance(rng, 1);
            const PetzConstruction rotated =
                rotated_petz(instance.sigma, instance.channel, t);
            const GaussianState recovered =
                apply(rotated.channel, rotated.sigma_out);
            CHECK(max_abs(recovered.cov - instance.sigma.cov) < 1e-10);
            CHECK(max_abs(recovered.mean - instance.sigma.mean) < 1e-10);
        }
    }

    SUBCASE("flows undo the rotation") {
        Rng rng(78);
        const Instance instance = random_instance(rng, 2);
        const double t = 0.8;
        const PetzConstruction base =
            petz_channel(instance.sigma, instance.channel);
        const PetzConstruction rotated =
            rotated_petz(instance.sigma, instance.channel, t);
        const Matrix back =
            symplectic_flow(instance.sigma, -t).matrix * rotated.channel.X *
            symplectic_flow(base.sigma_out, t).matrix;
        CHECK(max_abs(back - base.channel.X) < 1e-10);
    }
}

TEST_CASE("recovery identity in closed form") {
    const GaussianState sigma = GaussianState::thermal(1, 3.0);
    const GaussianChannel loss = GaussianChannel::loss(0.5);

    const PetzIdentityValue at_zero =
        verify_petz_identity(sigma, loss, Vector::Zero(2), Vector::Zero(2));
    CHECK(std::abs(at_zero.lhs - Complex(1, 0)) < 1e-14);
    CHECK(std::abs(at_zero.rhs - Complex(1, 0)) < 1e-14);

    Vector w1(2), w2(2);
    w1 << 1.0, 0.0;
    w2 << 0.0, 1.0;
    const PetzIdentityValue value = verify_petz_identity(sigma, loss, w1, w2);
    CHECK(std::abs(value.lhs - value.rhs) < 1e-12);

    Rng rng(202);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 2;
        const Instance instance = random_instance(rng, n);
        Vector a(2 * n), b(2 * n);
        for (int k = 0; k < 2 * n; ++k) {
            a(k) = rng.uniform(-2.0, 2.0);
            b(k) = rng.uniform(-2.0, 2.0);
        }
        const PetzIdentityValue v =
            verify_petz_identity(instance.sigma, instance.channel, a, b);
        worst = std::max(worst, std::abs(v.lhs - v.rhs));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("mean factoring matches explicit displacement composition") {
    Rng rng(303);
    for (int trial = 0; trial < 20; ++trial) {
        const Instance instance = random_instance(rng, 1);
        const GaussianState& sigma = instance.sigma;
        const GaussianChannel& channel = instance.channel;

        const PetzConstruction with_means = petz_channel(sigma, channel);

        GaussianState sigma0(Vector::Zero(2), sigma.cov);
        GaussianChannel channel0 = channel;
        channel0.delta = Vector::Zero(2);
        const PetzConstruction core = petz_channel(sigma0, channel0);

        const Vector target = channel.X * sigma.mean + channel.delta;
        const GaussianChannel recomposed =
            compose(GaussianChannel::displacement(sigma.mean),
                    compose(core.channel,
                            GaussianChannel::displacement(-target)));
        CHECK(max_abs(recomposed.X - with_means.channel.X) < 1e-12);
        CHECK(max_abs(recomposed.Y - with_means.channel.Y) < 1e-12);
        CHECK(max_abs(recomposed.delta - with_means.channel.delta) < 1e-12);
    }
}

TEST_CASE("cp certificate sweep") {
    Rng rng(404);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + trial % 2;
        const Instance instance = random_instance(rng, n);
        const PetzConstruction petz =
            petz_channel(instance.sigma, instance.channel);
        CHECK(cp_certificate(petz).min_eigenvalue >= -1e-9);
    }
}

}  // TEST_SUITE
