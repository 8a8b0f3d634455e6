#include "gausspetz/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gausspetz {

GaussianChannel::GaussianChannel(Matrix x, Matrix y, Vector delta_in)
    : X(std::move(x)), Y(std::move(y)), delta(std::move(delta_in)) {
    if (X.rows() % 2 != 0 || X.cols() % 2 != 0 || X.rows() == 0 ||
        X.cols() == 0) {
        throw std::invalid_argument("GaussianChannel: X must be 2m x 2n");
    }
    if (Y.rows() != X.rows() || Y.cols() != X.rows()) {
        throw std::invalid_argument(
            "GaussianChannel: Y must be square with the output dimension of X");
    }
    if (delta.size() != X.rows()) {
        throw std::invalid_argument(
            "GaussianChannel: delta must have the output dimension of X");
    }
    if (symmetry_defect(Y) > tol::symmetry) {
        throw std::invalid_argument("GaussianChannel: Y must be symmetric");
    }
    const CpReport cp = check_cp(X, Y);
    if (!cp.is_cp) {
        throw std::domain_error(
            "GaussianChannel: not completely positive, min eigenvalue of "
            "Y + i*Omega - i X Omega X^T is " +
            std::to_string(cp.min_eigenvalue));
    }
}

GaussianChannel GaussianChannel::identity(int n_modes) {
    const int dim = 2 * n_modes;
    return GaussianChannel(Matrix::Identity(dim, dim), Matrix::Zero(dim, dim),
                           Vector::Zero(dim));
}

GaussianChannel GaussianChannel::loss(double eta, int n_modes) {
    if (eta <= 0.0 || eta > 1.0) {
        throw std::invalid_argument("loss: eta must lie in (0, 1]");
    }
    const int dim = 2 * n_modes;
    return GaussianChannel(std::sqrt(eta) * Matrix::Identity(dim, dim),
                           (1.0 - eta) * Matrix::Identity(dim, dim),
                           Vector::Zero(dim));
}

GaussianChannel GaussianChannel::amplifier(double gain, int n_modes) {
    if (gain < 1.0) {
        throw std::invalid_argument("amplifier: gain must be >= 1");
    }
    const int dim = 2 * n_modes;
    return GaussianChannel(std::sqrt(gain) * Matrix::Identity(dim, dim),
                           (gain - 1.0) * Matrix::Identity(dim, dim),
                           Vector::Zero(dim));
}

GaussianChannel GaussianChannel::classical_noise(const Matrix& noise) {
    const int dim = static_cast<int>(noise.rows());
    return GaussianChannel(Matrix::Identity(dim, dim), noise,
                           Vector::Zero(dim));
}

GaussianChannel GaussianChannel::displacement(const Vector& d) {
    const int dim = static_cast<int>(d.size());
    return GaussianChannel(Matrix::Identity(dim, dim), Matrix::Zero(dim, dim),
                           d);
}

GaussianChannel GaussianChannel::phase_rotation(double theta, int n_modes) {
    const int dim = 2 * n_modes;
    const Matrix omega = symplectic_form(n_modes);
    const Matrix rot = std::cos(theta) * Matrix::Identity(dim, dim) +
                       std::sin(theta) * omega;
    return GaussianChannel(rot, Matrix::Zero(dim, dim), Vector::Zero(dim));
}

CpReport check_cp(const Matrix& x, const Matrix& y) {
    const int n_in = static_cast<int>(x.cols()) / 2;
    const int n_out = static_cast<int>(x.rows()) / 2;
    const Matrix omega_in = symplectic_form(n_in);
    const Matrix omega_out = symplectic_form(n_out);
    ComplexMatrix herm =
        y.cast<Complex>() +
        Complex(0, 1) * (omega_out - x * omega_in * x.transpose()).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm,
                                                        Eigen::EigenvaluesOnly);
    CpReport report;
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    report.is_cp = report.min_eigenvalue >= -tol::uncertainty_slack;
    return report;
}

CpReport check_cp(const GaussianChannel& channel) {
    return check_cp(channel.X, channel.Y);
}

GaussianState apply(const GaussianChannel& channel, const GaussianState& state) {
    if (state.n_modes != channel.n_in()) {
        throw std::invalid_argument(
            "apply: channel expects " + std::to_string(channel.n_in()) +
            " modes, state has " + std::to_string(state.n_modes));
    }
    Matrix cov = channel.X * state.cov * channel.X.transpose() + channel.Y;
    cov = 0.5 * (cov + cov.transpose().eval());
    return GaussianState(channel.X * state.mean + channel.delta, cov);
}

std::pair<Matrix, Vector> adjoint_transform(const GaussianChannel& channel,
                                            const Matrix& cov,
                                            const Vector& mean) {
    if (channel.X.rows() != channel.X.cols()) {
        throw std::domain_error(
            "adjoint_transform: the adjoint covariance rule is only defined "
            "for square invertible X; rectangular channels expose only "
            "adjoint_on_displacement");
    }
    Eigen::FullPivLU<Matrix> lu(channel.X);
    if (!lu.isInvertible()) {
        throw std::domain_error(
            "adjoint_transform: X is singular; the adjoint covariance rule "
            "requires invertible X");
    }
    const Matrix x_inv = lu.inverse();
    Matrix out_cov = x_inv * (cov + channel.Y) * x_inv.transpose();
    out_cov = 0.5 * (out_cov + out_cov.transpose().eval());
    return {out_cov, x_inv * (mean - channel.delta)};
}

AdjointDisplacementAction adjoint_on_displacement(const GaussianChannel& channel,
                                                  const Vector& z) {
    if (z.size() != channel.X.rows()) {
        throw std::invalid_argument(
            "adjoint_on_displacement: z must have the output dimension");
    }
    AdjointDisplacementAction action;
    action.vector = channel.X.transpose() * z;
    action.log_weight = -0.25 * z.dot(channel.Y * z);
    action.phase = z.dot(channel.delta);
    return action;
}

GaussianChannel compose(const GaussianChannel& after,
                        const GaussianChannel& before) {
    if (after.n_in() != before.n_out()) {
        throw std::invalid_argument("compose: mode count mismatch");
    }
    Matrix y = after.X * before.Y * after.X.transpose() + after.Y;
    y = 0.5 * (y + y.transpose().eval());
    return GaussianChannel(after.X * before.X, y,
                           after.X * before.delta + after.delta);
}

}  // namespace gausspetz
