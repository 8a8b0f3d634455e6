#ifndef GAUSSPETZ_MEASURES_HPP
#define GAUSSPETZ_MEASURES_HPP

#include "gausspetz/petz.hpp"

namespace gausspetz {

/// Von Neumann entropy in nats, evaluated on the symplectic spectrum:
/// sum_j [ (nu+1)/2 log((nu+1)/2) - (nu-1)/2 log((nu-1)/2) ].
double entropy(const GaussianState& state);

/// Relative entropy D(rho || sigma) in nats. Evaluated from the
/// exponential form of sigma:
///     -S(rho) + Tr[H_sigma V_rho]/4 + d^T H_sigma d / 2 + log Z_sigma,
/// d = s_rho - s_sigma. Requires sigma faithful (D is +infinity outside
/// the support of sigma).
double relative_entropy(const GaussianState& rho, const GaussianState& sigma);

/// Uhlmann fidelity F = ||sqrt(rho) sqrt(sigma)||_1^2, evaluated from the
/// square-root sandwich covariance together with Tr[rho sigma] and the
/// square-root trace of the sandwiched operator. Symmetric, F(rho,rho)=1.
double fidelity(const GaussianState& rho, const GaussianState& sigma);

struct DeficitReport {
    double d_in = 0.0;        // D(rho || sigma)
    double d_out = 0.0;       // D(N(rho) || N(sigma))
    double d_recovery = 0.0;  // D(rho || (P o N)(rho))
    double deficit = 0.0;     // d_in - d_out - d_recovery
    bool near_singular = false;
};

/// Deficit of the three-term refinement of data processing with the Petz
/// recovery channel. A negative deficit witnesses that the refinement
/// fails for the given instance. When (P o N)(rho) sits within 1e-7 of a
/// pure direction the instance is flagged near_singular and the recovery
/// term is left NaN rather than reported as infinite.
DeficitReport recovery_deficit(const GaussianState& rho,
                               const GaussianState& sigma,
                               const GaussianChannel& n);

struct QuadratureConfig {
    double half_range = 5.0;
    int points = 201;
};

/// Averaging density p(t) = (pi/2) / (cosh(pi t) + 1) of the rotated
/// recovery channels.
double recovery_weight(double t);

struct RecoveryBound {
    double lhs = 0.0;    // D(rho || sigma)
    double rhs = 0.0;    // D(N(rho) || N(sigma)) - int p(t) log F(...)
    double slack = 0.0;  // lhs - rhs, nonnegative up to quadrature error
    double quadrature_mass = 0.0;
};

/// Evaluates both sides of the proven recovery bound
///   D(rho||sigma) >= D(N(rho)||N(sigma))
///                    - int dt p(t) log F(rho, (P^{t/2} o N)(rho))
/// with a composite trapezoid rule on [-half_range, half_range]. Throws
/// std::invalid_argument when the quadrature window leaves more than 1e-4
/// of the mass of p in the tails.
RecoveryBound fidelity_recovery_bound(const GaussianState& rho,
                                      const GaussianState& sigma,
                                      const GaussianChannel& n,
                                      const QuadratureConfig& quad = {});

}  // namespace gausspetz

#endif
