#ifndef GAUSSPETZ_WILLIAMSON_HPP
#define GAUSSPETZ_WILLIAMSON_HPP

#include "gausspetz/types.hpp"

namespace gausspetz {

/// Williamson normal form of a symmetric positive definite 2n x 2n matrix:
///
///     V = S * (diag(nu) (+) diag(nu)) * S^T,   S Omega S^T = Omega,
///
/// with the symplectic eigenvalues nu sorted in descending order.
struct WilliamsonDecomposition {
    Matrix S;
    Vector nu;

    Matrix reconstruct() const;
    /// diag(nu) (+) diag(nu) in xxpp ordering.
    Matrix diagonal() const;
};

/// Computes the Williamson decomposition via the real Schur form of the
/// skew-symmetric matrix V^{1/2} Omega V^{1/2}. Throws std::domain_error
/// if cov is not positive definite.
WilliamsonDecomposition williamson(const Matrix& cov);

/// Symplectic eigenvalues only (descending).
Vector symplectic_eigenvalues(const Matrix& cov);

/// Inverse of a symplectic matrix, S^{-1} = Omega S^T Omega^T.
Matrix symplectic_inverse(const Matrix& s);

}  // namespace gausspetz

#endif
