#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include <doctest.h>

#include "gausspetz/calculus.hpp"
#include "gausspetz/lie_algebra.hpp"
#include "gausspetz/sampling.hpp"
#include "test_helpers.hpp"

using namespace gausspetz;
using gausspetz::testing::max_abs;

namespace {

// Random generator with Omega X symmetric and ||X|| <= scale.
QuadraticHamiltonian random_generator(Rng& rng, int n, double scale) {
    const int dim = 2 * n;
    Matrix sym(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = r; c < dim; ++c) {
            sym(r, c) = rng.uniform(-1.0, 1.0);
            sym(c, r) = sym(r, c);
        }
    }
    const Matrix omega = symplectic_form(n);
    Matrix x = omega.transpose() * sym;
    const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
    if (norm > scale) x *= scale / norm;
    Vector s(dim);
    for (int k = 0; k < dim; ++k) s(k) = rng.uniform(-1.0, 1.0);
    return QuadraticHamiltonian(x, s, rng.uniform(-1.0, 1.0));
}

QuadraticHamiltonian commutator(const QuadraticHamiltonian& a,
                                const QuadraticHamiltonian& b) {
    return QuadraticHamiltonian(a.X * b.X - b.X * a.X, a.X * b.s - b.X * a.s,
                                -2.0 * a.s.dot(symplectic_form(a.n_modes) *
                                               b.s));
}

}  // namespace

TEST_SUITE("lie_algebra") {

TEST_CASE("embedding layout and commutator homomorphism") {
    Vector s(2);
    s << 1.0, -2.0;
    const QuadraticHamiltonian pure_shift(Matrix::Zero(2, 2), s, 0.0);
    const Matrix m = embed(pure_shift);
    CHECK(m.rows() == 4);
    CHECK(max_abs(m.block(1, 1, 2, 2)) == 0.0);
    CHECK(m(1, 3) == 1.0);
    CHECK(m(2, 3) == -2.0);
    // Top border carries Omega s.
    CHECK(m(0, 1) == -2.0);
    CHECK(m(0, 2) == -1.0);

    const QuadraticHamiltonian rotation(0.7 * symplectic_form(1),
                                        Vector::Zero(2), 0.0);
    CHECK(max_abs(embed(rotation).block(1, 1, 2, 2) -
                  0.7 * symplectic_form(1)) == 0.0);

    Rng rng(601);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 2;
        const QuadraticHamiltonian a = random_generator(rng, n, 2.0);
        const QuadraticHamiltonian b = random_generator(rng, n, 2.0);
        const Matrix lhs = embed(commutator(a, b));
        const Matrix rhs = embed(a) * embed(b) - embed(b) * embed(a);
        CHECK(max_abs(lhs - rhs) < 1e-12);
    }

    Matrix not_in_algebra(2, 2);
    not_in_algebra << 1.0, 0.0, 0.0, 0.0;
    CHECK_THROWS_AS(QuadraticHamiltonian(not_in_algebra, Vector::Zero(2), 0.0),
                    std::domain_error);
}

TEST_CASE("closed-form exponential limits") {
    Vector s(2);
    s << 0.5, 1.5;
    const GroupElement shift =
        lie_exp(QuadraticHamiltonian(Matrix::Zero(2, 2), s, 0.25));
    CHECK(max_abs(shift.central() - Matrix::Identity(2, 2)) < 1e-15);
    CHECK(max_abs(shift.right_border() - s) < 1e-15);
    CHECK(shift.corner() == doctest::Approx(0.25).epsilon(1e-15));

    const GroupElement rotation = lie_exp(
        QuadraticHamiltonian(0.7 * symplectic_form(1), Vector::Zero(2), 0.0));
    const Matrix expected = std::cos(0.7) * Matrix::Identity(2, 2) +
                            std::sin(0.7) * symplectic_form(1);
    CHECK(max_abs(rotation.central() - expected) < 1e-14);
}

TEST_CASE("closed-form exponential equals the generic dense exponential") {
    Rng rng(602);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 2;
        const QuadraticHamiltonian h = random_generator(rng, n, 3.0);
        const Matrix dense = embed(h).exp();
        CHECK(max_abs(lie_exp(h).matrix - dense) < 1e-12);
    }
}

TEST_CASE("series and solve branches agree at the radius") {
    Rng rng(603);
    for (const double scale : {0.2499, 0.2501}) {
        const QuadraticHamiltonian h = random_generator(rng, 1, scale);
        CHECK(max_abs(lie_exp(h).matrix - embed(h).exp()) < 1e-13);
    }
}

TEST_CASE("product of exponentials reduces to a single generator") {
    SUBCASE("displacement composition phase") {
        Vector s1(2), s2(2);
        s1 << 1.0, 0.5;
        s2 << -0.75, 2.0;
        const QuadraticHamiltonian h3 =
            product_to_single(QuadraticHamiltonian(Matrix::Zero(2, 2), s1, 0.0),
                              QuadraticHamiltonian(Matrix::Zero(2, 2), s2, 0.0));
        CHECK(max_abs(h3.X) < 1e-12);
        CHECK(max_abs(h3.s - (s1 + s2)) < 1e-12);
        const double expected_phase = -s1.dot(symplectic_form(1) * s2);
        CHECK(h3.a == doctest::Approx(expected_phase).epsilon(1e-12));
    }

    SUBCASE("inverse pair cancels") {
        Rng rng(604);
        const QuadraticHamiltonian h = random_generator(rng, 1, 1.5);
        const QuadraticHamiltonian inverse(-h.X, -h.s, -h.a);
        const QuadraticHamiltonian zero = product_to_single(h, inverse);
        CHECK(max_abs(zero.X) < 1e-10);
        CHECK(max_abs(zero.s) < 1e-10);
        CHECK(std::abs(zero.a) < 1e-10);
    }

    SUBCASE("commuting rotations add") {
        const QuadraticHamiltonian r1(0.9 * symplectic_form(1),
                                      Vector::Zero(2), 0.0);
        const QuadraticHamiltonian r2(1.3 * symplectic_form(1),
                                      Vector::Zero(2), 0.0);
        const QuadraticHamiltonian sum = product_to_single(r1, r2);
        CHECK(max_abs(sum.X - 2.2 * symplectic_form(1)) < 1e-11);
    }

    SUBCASE("round trip on random pairs") {
        Rng rng(605);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 1 + trial % 2;
            const QuadraticHamiltonian h1 = random_generator(rng, n, 1.0);
            const QuadraticHamiltonian h2 = random_generator(rng, n, 1.0);
            const QuadraticHamiltonian h3 = product_to_single(h1, h2);
            const Matrix defect =
                lie_exp(h3).matrix - lie_exp(h1).matrix * lie_exp(h2).matrix;
            CHECK(max_abs(defect) < 1e-10);
        }
    }

    SUBCASE("branch cut is detected") {
        // Two rotations summing to pi put the central block at -I.
        const QuadraticHamiltonian r1(
            0.5 * std::acos(-1.0) * symplectic_form(1), Vector::Zero(2), 0.0);
        CHECK_THROWS_AS(product_to_single(r1, r1), std::domain_error);
    }
}

TEST_CASE("sandwich factorization through the matrix algebra") {
    SUBCASE("zero displacement is trivial") {
        const auto fact = sandwich_via_golden_rule(3.0 * Matrix::Identity(2, 2),
                                                   Vector::Zero(2));
        CHECK(fact.log_weight == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(max_abs(fact.displacement) < 1e-14);
    }

    SUBCASE("isotropic thermal weight") {
        Vector x(2);
        x << 1.0, 0.0;
        const auto fact =
            sandwich_via_golden_rule(3.0 * Matrix::Identity(2, 2), x);
        CHECK(fact.log_weight == doctest::Approx(-0.75).epsilon(1e-12));
    }

    SUBCASE("agrees with the direct formula on a grid") {
        Rng rng(606);
        for (int trial = 0; trial < 5; ++trial) {
            const GaussianState state = random_state(rng, 1, 1.1, 3.0, 0.0);
            const Matrix omega = symplectic_form(1);
            for (double a = -2.0; a <= 2.0; a += 1.0) {
                for (double b = -2.0; b <= 2.0; b += 1.0) {
                    Vector x(2), y(2);
                    x << a, 0.7 * b;
                    y << -0.3 * a, b;
                    const auto fact = sandwich_via_golden_rule(state.cov, x);
                    const Vector oy = omega * y;
                    const double log_char =
                        fact.log_weight + fact.displacement.dot(omega * y) -
                        0.25 * oy.dot(state.cov * oy);
                    const Complex direct = sandwich_char(state.cov, x, y);
                    CHECK(std::abs(std::exp(log_char) - direct.real()) <
                          1e-10);
                }
            }
        }
    }

    SUBCASE("requires a faithful state") {
        CHECK_THROWS_AS(
            sandwich_via_golden_rule(Matrix::Identity(2, 2), Vector::Zero(2)),
            std::domain_error);
    }
}

}  // TEST_SUITE
