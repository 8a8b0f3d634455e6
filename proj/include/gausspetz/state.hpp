#ifndef GAUSSPETZ_STATE_HPP
#define GAUSSPETZ_STATE_HPP

#include "gausspetz/types.hpp"

namespace gausspetz {

/// Symplectic form for n modes in xxpp quadrature ordering,
/// r = (x_1..x_n, p_1..p_n):
///
///     Omega = [  0   I_n ]
///             [ -I_n  0  ]
///
/// satisfying Omega^T Omega = I and Omega^T = -Omega.
Matrix symplectic_form(int n_modes);

/// An n-mode bosonic Gaussian state given by its mean vector and
/// covariance matrix.
///
/// Conventions (used consistently everywhere in this library):
///  - quadrature ordering is xxpp, NOT the xpxp interleaving common
///    elsewhere;
///  - hbar = 1, and the covariance is the anticommutator second moment
///    without a 1/2 factor, so the vacuum has cov = identity;
///  - a covariance matrix is physical iff cov + i*Omega >= 0, and the
///    state is faithful (full support) iff the inequality is strict.
struct GaussianState {
    int n_modes = 0;
    Vector mean;
    Matrix cov;

    GaussianState(Vector mean_in, Matrix cov_in);

    static GaussianState vacuum(int n_modes);
    /// Isotropic thermal state with symplectic eigenvalue nu (cov = nu*I).
    static GaussianState thermal(int n_modes, double nu);
};

struct ValidityReport {
    double symmetric_defect = 0.0;
    double min_uncertainty_eigenvalue = 0.0;
    bool is_valid = false;
    bool is_faithful = false;
};

/// Checks symmetry of the covariance and the uncertainty relation
/// cov + i*Omega >= 0. Faithful iff the minimum Hermitian eigenvalue of
/// cov + i*Omega exceeds the faithfulness threshold.
ValidityReport validate_state(const GaussianState& state);

/// Largest absolute entry of M - M^T.
double symmetry_defect(const Matrix& m);

/// Minimum eigenvalue of the Hermitian matrix cov + i*Omega.
double min_uncertainty_eigenvalue(const Matrix& cov);

}  // namespace gausspetz

#endif
