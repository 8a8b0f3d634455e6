#ifndef GAUSSPETZ_PETZ_HPP
#define GAUSSPETZ_PETZ_HPP

#include "gausspetz/calculus.hpp"
#include "gausspetz/channel.hpp"

namespace gausspetz {

/// Gaussian Petz recovery channel for an anchor state sigma and a Gaussian
/// channel N. The recovery channel carries
///
///   X_P = sqrt(I + (V_sigma Om)^{-2}) V_sigma X^T
///           * [sqrt(I + (Om V_out)^{-2})]^{-1} V_out^{-1},
///   Y_P = V_sigma - X_P V_out X_P^T,
///   delta_P = s_sigma - X_P (X s_sigma + delta),
///
/// with V_out the covariance of N(sigma). By construction it maps N(sigma)
/// back to sigma exactly, and it is always completely positive.
struct PetzConstruction {
    GaussianChannel channel;
    double cp_min_eigenvalue = 0.0;
    GaussianState sigma_out;  // N(sigma), the anchor output
};

/// Builds the Petz recovery channel. Requires N(sigma) faithful (every
/// symplectic eigenvalue strictly above 1); sigma itself may have pure
/// directions. Throws std::domain_error when the faithfulness hypothesis
/// fails and std::invalid_argument on dimension mismatch.
PetzConstruction petz_channel(const GaussianState& sigma,
                              const GaussianChannel& n);

/// One-parameter symplectic flow exp(Omega H_sigma t) generated by the
/// Hamiltonian matrix of a faithful state sigma. Symplectic for every t,
/// identity at t = 0.
struct SymplecticFlow {
    Matrix matrix;
};

SymplecticFlow symplectic_flow(const GaussianState& sigma, double t);

/// Rotated Petz channel: the Petz channel conjugated by the modular
/// rotations of sigma and N(sigma),
///   X_P^t = S_{sigma,t} X_P S_{N(sigma),-t},
///   Y_P^t = S_{sigma,t} Y_P S_{sigma,t}^T,
///   delta_P^t = s_sigma - X_P^t (X s_sigma + delta).
/// Requires sigma faithful in addition to the petz_channel hypotheses;
/// t = 0 reproduces petz_channel exactly.
PetzConstruction rotated_petz(const GaussianState& sigma,
                              const GaussianChannel& n, double t);

/// Complete-positivity certificate of a constructed recovery channel:
/// min Hermitian eigenvalue of Y_P + i*Omega - i X_P Omega X_P^T. This is
/// nonnegative for every valid construction.
CpReport cp_certificate(const PetzConstruction& construction);

/// Rotated recovery channels for one (sigma, N) pair with the base
/// construction and both modular flows precomputed; at(t) costs two small
/// block rotations. Used by the recovery-bound quadrature, which evaluates
/// hundreds of t values per instance.
class RotatedPetzFamily {
  public:
    RotatedPetzFamily(const GaussianState& sigma, const GaussianChannel& n);

    GaussianChannel at(double t) const;
    const GaussianState& sigma_out() const { return sigma_out_; }

  private:
    Matrix x_p_;
    Matrix y_p_;
    Vector sigma_mean_;
    Vector target_mean_;  // X s_sigma + delta
    GaussianState sigma_out_;
    WilliamsonDecomposition wd_sigma_;
    WilliamsonDecomposition wd_out_;
};

struct PetzIdentityValue {
    Complex lhs;
    Complex rhs;
};

/// Evaluates both sides of the defining Petz equation on displacement
/// operators:
///   lhs = Tr[sigma^{1/2} D_{-w2} sigma^{1/2} N^dag(D_{w1})]
///   rhs = Tr[P^dag(D_{-w2}) N(sigma)^{1/2} D_{w1} N(sigma)^{1/2}]
/// in closed form. The lhs depends only on (sigma, N); the rhs goes through
/// the constructed (X_P, Y_P) data, so their equality re-derives the
/// recovery-channel formulas independently of the construction path.
PetzIdentityValue verify_petz_identity(const GaussianState& sigma,
                                       const GaussianChannel& n,
                                       const Vector& w1, const Vector& w2);

namespace detail {

/// Flow matrix exp(Omega H t) from the Williamson data of the covariance
/// that generated H (mode phases h_j = 2 arcoth(nu_j)).
Matrix flow_matrix(const WilliamsonDecomposition& wd, double t);

}  // namespace detail

}  // namespace gausspetz

#endif
