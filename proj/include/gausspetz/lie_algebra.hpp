#ifndef GAUSSPETZ_LIE_ALGEBRA_HPP
#define GAUSSPETZ_LIE_ALGEBRA_HPP

#include "gausspetz/types.hpp"

namespace gausspetz {

/// Inhomogeneous quadratic generator
///
///     (i/2) r^T Omega X r + i s^T Omega r + (i/2) a
///
/// with Omega X symmetric. These close under commutators and embed
/// isomorphically into a (2n+2)-dimensional matrix algebra (see embed),
/// which turns operator-exponential manipulations into small matrix
/// products. The scalar a is tracked exactly: it carries operator phases
/// such as the displacement composition phase.
struct QuadraticHamiltonian {
    int n_modes = 0;
    Matrix X;
    Vector s;
    double a = 0.0;

    QuadraticHamiltonian(Matrix x, Vector s_in, double a_in);
};

/// Matrix-algebra image of a generator:
///
///     [ 0  (Omega s)^T  a ]
///     [ 0       X       s ]
///     [ 0       0       0 ]
Matrix embed(const QuadraticHamiltonian& h);

/// Group element: exponential of an embedded generator. First column and
/// last row are those of the identity; the central block is symplectic
/// when X generates a real symplectic flow.
struct GroupElement {
    Matrix matrix;

    int n_modes() const { return (static_cast<int>(matrix.rows()) - 2) / 2; }
    Matrix central() const;
    Vector right_border() const;
    double corner() const;
};

/// Closed-form exponential of embed(h): central block e^X with borders
/// built from the entire functions (I - e^{-X})/X, (e^X - I)/X and
/// (X - sinh X)/X^2, evaluated by series near X = 0 and by solves
/// otherwise, so the formula has no singularity at X = 0.
GroupElement lie_exp(const QuadraticHamiltonian& h);

/// Finds h3 with lie_exp(h3) = lie_exp(h1) * lie_exp(h2) via the matrix
/// logarithm of the product. Throws std::domain_error when the central
/// block of the product has an eigenvalue on the negative real axis (no
/// real logarithm in the algebra).
QuadraticHamiltonian product_to_single(const QuadraticHamiltonian& h1,
                                       const QuadraticHamiltonian& h2);

/// Factorization of sqrt(sigma0) D_x sqrt(sigma0) computed through the
/// matrix-algebra embedding with the (complex) generator of sigma0:
///
///   sqrt(sigma0) D_x sqrt(sigma0)
///       = exp(log_weight) * D_{i u} sigma0 D_{-i u},
///
/// returning log_weight and the real vector u. Independent route to the
/// same object as sandwich_char. Requires a faithful covariance.
struct SandwichFactorization {
    double log_weight = 0.0;
    Vector displacement;
};

SandwichFactorization sandwich_via_golden_rule(const Matrix& cov_sigma,
                                               const Vector& x);

}  // namespace gausspetz

#endif
