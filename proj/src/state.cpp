#include "gausspetz/state.hpp"

#include <stdexcept>
#include <string>

namespace gausspetz {

Matrix symplectic_form(int n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("symplectic_form: n_modes must be >= 1");
    }
    Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
    omega.topRightCorner(n_modes, n_modes) = Matrix::Identity(n_modes, n_modes);
    omega.bottomLeftCorner(n_modes, n_modes) =
        -Matrix::Identity(n_modes, n_modes);
    return omega;
}

GaussianState::GaussianState(Vector mean_in, Matrix cov_in)
    : mean(std::move(mean_in)), cov(std::move(cov_in)) {
    if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 || cov.rows() == 0) {
        throw std::invalid_argument(
            "GaussianState: covariance must be a nonempty 2n x 2n matrix, got " +
            std::to_string(cov.rows()) + " x " + std::to_string(cov.cols()));
    }
    if (mean.size() != cov.rows()) {
        throw std::invalid_argument(
            "GaussianState: mean length " + std::to_string(mean.size()) +
            " does not match covariance dimension " + std::to_string(cov.rows()));
    }
    n_modes = static_cast<int>(cov.rows()) / 2;
}

GaussianState GaussianState::vacuum(int n_modes) {
    return GaussianState(Vector::Zero(2 * n_modes),
                         Matrix::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState GaussianState::thermal(int n_modes, double nu) {
    return GaussianState(Vector::Zero(2 * n_modes),
                         nu * Matrix::Identity(2 * n_modes, 2 * n_modes));
}

double symmetry_defect(const Matrix& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

double min_uncertainty_eigenvalue(const Matrix& cov) {
    const int dim = static_cast<int>(cov.rows());
    const Matrix omega = symplectic_form(dim / 2);
    ComplexMatrix herm = cov.cast<Complex>() + Complex(0, 1) * omega.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm,
                                                        Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

ValidityReport validate_state(const GaussianState& state) {
    ValidityReport report;
    report.symmetric_defect = symmetry_defect(state.cov);
    report.min_uncertainty_eigenvalue = min_uncertainty_eigenvalue(state.cov);
    report.is_valid = report.symmetric_defect <= tol::symmetry &&
                      report.min_uncertainty_eigenvalue >= -tol::uncertainty_slack;
    report.is_faithful =
        report.is_valid && report.min_uncertainty_eigenvalue > tol::faithfulness;
    return report;
}

}  // namespace gausspetz
