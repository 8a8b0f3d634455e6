#ifndef GAUSSPETZ_CHANNEL_HPP
#define GAUSSPETZ_CHANNEL_HPP

#include <utility>

#include "gausspetz/state.hpp"

namespace gausspetz {

struct CpReport {
    double min_eigenvalue = 0.0;
    bool is_cp = false;
};

/// A Gaussian channel (X, Y, delta) acting on covariance matrices and
/// mean vectors as
///
///     V |-> X V X^T + Y,      s |-> X s + delta.
///
/// X is 2*n_out x 2*n_in (rectangular channels change the mode count),
/// Y is symmetric positive semidefinite, and complete positivity requires
/// Y + i*Omega_out - i X Omega_in X^T >= 0. Channels are validated once at
/// construction; operations assume a valid channel.
struct GaussianChannel {
    Matrix X;
    Matrix Y;
    Vector delta;

    GaussianChannel(Matrix x, Matrix y, Vector delta_in);

    int n_in() const { return static_cast<int>(X.cols()) / 2; }
    int n_out() const { return static_cast<int>(X.rows()) / 2; }

    static GaussianChannel identity(int n_modes);
    /// Pure loss with transmissivity eta in (0, 1]: X = sqrt(eta) I,
    /// Y = (1 - eta) I.
    static GaussianChannel loss(double eta, int n_modes = 1);
    /// Quantum-limited amplifier with gain G >= 1: X = sqrt(G) I,
    /// Y = (G - 1) I.
    static GaussianChannel amplifier(double gain, int n_modes = 1);
    /// Additive classical noise: X = I, Y = noise.
    static GaussianChannel classical_noise(const Matrix& noise);
    static GaussianChannel displacement(const Vector& delta);
    /// Mode-wise phase rotation by theta.
    static GaussianChannel phase_rotation(double theta, int n_modes = 1);
};

/// Minimum Hermitian eigenvalue of Y + i*Omega_out - i X Omega_in X^T.
CpReport check_cp(const Matrix& x, const Matrix& y);
CpReport check_cp(const GaussianChannel& channel);

GaussianState apply(const GaussianChannel& channel, const GaussianState& state);

/// Adjoint (Heisenberg picture) action on a Gaussian operator:
/// cov' = X^{-1} (cov + Y) X^{-T}, mean' = X^{-1} (mean - delta).
/// Only defined for square invertible X; rectangular channels expose only
/// adjoint_on_displacement.
std::pair<Matrix, Vector> adjoint_transform(const GaussianChannel& channel,
                                            const Matrix& cov,
                                            const Vector& mean);

struct AdjointDisplacementAction {
    Vector vector;        // X^T z
    double log_weight;    // -z^T Y z / 4
    double phase;         // z^T delta
};

/// Action of the channel adjoint on a displacement operator:
/// N^dag(D_{Omega z}) = D_{Omega X^T z} * exp(-z^T Y z / 4 + i z^T delta).
AdjointDisplacementAction adjoint_on_displacement(const GaussianChannel& channel,
                                                  const Vector& z);

/// Serial composition: apply(compose(after, before), s)
/// = apply(after, apply(before, s)).
GaussianChannel compose(const GaussianChannel& after,
                        const GaussianChannel& before);

}  // namespace gausspetz

#endif
