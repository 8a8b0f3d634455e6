#include "gausspetz/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "gausspetz/calculus.hpp"

namespace gausspetz {
namespace fock {

namespace {

ComplexMatrix annihilation(int cutoff) {
    ComplexMatrix a = ComplexMatrix::Zero(cutoff, cutoff);
    for (int k = 1; k < cutoff; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return a;
}

ComplexMatrix kron_chain(const std::vector<ComplexMatrix>& factors) {
    ComplexMatrix out = factors.front();
    for (std::size_t j = 1; j < factors.size(); ++j) {
        out = Eigen::kroneckerProduct(out, factors[j]).eval();
    }
    return out;
}

double sqrt_binomial(int n, int k) {
    return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                           std::lgamma(n - k + 1.0)));
}

// Gauss-Hermite nodes/weights for weight e^{-t^2} by Golub-Welsch.
std::pair<Vector, Vector> gauss_hermite(int points) {
    Matrix jacobi = Matrix::Zero(points, points);
    for (int k = 1; k < points; ++k) {
        jacobi(k - 1, k) = std::sqrt(0.5 * k);
        jacobi(k, k - 1) = jacobi(k - 1, k);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(jacobi);
    Vector nodes = eig.eigenvalues();
    Vector weights(points);
    const double sqrt_pi = std::sqrt(std::acos(-1.0));
    for (int k = 0; k < points; ++k) {
        const double first = eig.eigenvectors()(0, k);
        weights(k) = sqrt_pi * first * first;
    }
    return {nodes, weights};
}

}  // namespace

int dimension(int n_modes, int cutoff) {
    int dim = 1;
    for (int j = 0; j < n_modes; ++j) dim *= cutoff;
    return dim;
}

std::vector<ComplexMatrix> quadratures(int n_modes, int cutoff) {
    if (cutoff < 2) {
        throw std::invalid_argument("quadratures: cutoff must be >= 2");
    }
    const ComplexMatrix a = annihilation(cutoff);
    const ComplexMatrix id = ComplexMatrix::Identity(cutoff, cutoff);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const ComplexMatrix x1 = inv_sqrt2 * (a + a.adjoint());
    const ComplexMatrix p1 = Complex(0, 1) * inv_sqrt2 * (a.adjoint() - a);

    std::vector<ComplexMatrix> result(2 * n_modes);
    for (int j = 0; j < n_modes; ++j) {
        std::vector<ComplexMatrix> fx(n_modes, id);
        std::vector<ComplexMatrix> fp(n_modes, id);
        fx[j] = x1;
        fp[j] = p1;
        result[j] = kron_chain(fx);
        result[n_modes + j] = kron_chain(fp);
    }
    return result;
}

ComplexMatrix displacement_op(const Vector& z, int cutoff) {
    const int n = static_cast<int>(z.size()) / 2;
    const std::vector<ComplexMatrix> r = quadratures(n, cutoff);
    const Vector oz = symplectic_form(n) * z;
    const int dim = dimension(n, cutoff);
    ComplexMatrix hermitian = ComplexMatrix::Zero(dim, dim);
    for (int j = 0; j < 2 * n; ++j) {
        hermitian += oz(j) * r[j];
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian);
    ComplexVector phases(dim);
    for (int k = 0; k < dim; ++k) {
        phases(k) = std::exp(Complex(0, 1) * eig.eigenvalues()(k));
    }
    return eig.eigenvectors() * phases.asDiagonal() *
           eig.eigenvectors().adjoint();
}

ComplexMatrix gaussian_density(const GaussianState& state, int cutoff,
                               double* tail_mass) {
    const HamiltonianForm form = hamiltonian_from_covariance(state.cov);
    const int n = state.n_modes;
    const std::vector<ComplexMatrix> r = quadratures(n, cutoff);
    const int dim = dimension(n, cutoff);

    std::vector<ComplexMatrix> shifted(2 * n);
    for (int j = 0; j < 2 * n; ++j) {
        shifted[j] = r[j] - state.mean(j) * ComplexMatrix::Identity(dim, dim);
    }
    ComplexMatrix quad = ComplexMatrix::Zero(dim, dim);
    for (int j = 0; j < 2 * n; ++j) {
        for (int k = 0; k < 2 * n; ++k) {
            if (form.H(j, k) != 0.0) {
                quad += 0.5 * form.H(j, k) * (shifted[j] * shifted[k]);
            }
        }
    }
    quad = 0.5 * (quad + quad.adjoint().eval());

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(quad);
    Vector boltzmann(dim);
    const double min_e = eig.eigenvalues().minCoeff();
    for (int k = 0; k < dim; ++k) {
        boltzmann(k) = std::exp(-(eig.eigenvalues()(k) - min_e));
    }
    boltzmann /= boltzmann.sum();
    ComplexMatrix rho = eig.eigenvectors() *
                        boltzmann.cast<Complex>().asDiagonal() *
                        eig.eigenvectors().adjoint();

    if (tail_mass != nullptr) {
        double tail = 0.0;
        for (int idx = 0; idx < dim; ++idx) {
            int rest = idx;
            bool touches = false;
            for (int j = 0; j < n; ++j) {
                if (rest % cutoff == cutoff - 1) touches = true;
                rest /= cutoff;
            }
            if (touches) tail += rho(idx, idx).real();
        }
        *tail_mass = tail;
    }
    return rho;
}

std::vector<ComplexMatrix> loss_kraus(double eta, int cutoff) {
    if (eta <= 0.0 || eta > 1.0) {
        throw std::invalid_argument("loss_kraus: eta must lie in (0, 1]");
    }
    std::vector<ComplexMatrix> kraus;
    for (int k = 0; k < cutoff; ++k) {
        ComplexMatrix a_k = ComplexMatrix::Zero(cutoff, cutoff);
        bool nonzero = false;
        for (int m = k; m < cutoff; ++m) {
            const double amp = sqrt_binomial(m, k) *
                               std::pow(eta, 0.5 * (m - k)) *
                               std::pow(1.0 - eta, 0.5 * k);
            a_k(m - k, m) = amp;
            if (amp != 0.0) nonzero = true;
        }
        if (nonzero) kraus.push_back(std::move(a_k));
    }
    return kraus;
}

std::vector<ComplexMatrix> amplifier_kraus(double gain, int cutoff) {
    if (gain < 1.0) {
        throw std::invalid_argument("amplifier_kraus: gain must be >= 1");
    }
    std::vector<ComplexMatrix> kraus;
    for (int k = 0; k < cutoff; ++k) {
        ComplexMatrix a_k = ComplexMatrix::Zero(cutoff, cutoff);
        bool nonzero = false;
        for (int m = 0; m + k < cutoff; ++m) {
            const double amp = sqrt_binomial(m + k, k) *
                               std::pow(1.0 - 1.0 / gain, 0.5 * k) *
                               std::pow(gain, -0.5 * (m + 1));
            a_k(m + k, m) = amp;
            if (amp != 0.0) nonzero = true;
        }
        if (nonzero) kraus.push_back(std::move(a_k));
    }
    return kraus;
}

std::vector<ComplexMatrix> classical_noise_kraus(const Matrix& noise,
                                                 int cutoff,
                                                 int points_per_axis) {
    const int dim = static_cast<int>(noise.rows());
    const int n = dim / 2;
    if (noise.cwiseAbs().maxCoeff() < 1e-14) {
        return {ComplexMatrix::Identity(dimension(n, cutoff),
                                        dimension(n, cutoff))};
    }
    // Mixing displacements v ~ N(0, Y/2) adds Y to the covariance.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * noise);
    Matrix root = Matrix::Zero(dim, dim);
    std::vector<int> active;
    for (int j = 0; j < dim; ++j) {
        const double lambda = eig.eigenvalues()(j);
        if (lambda > 1e-14) {
            root.col(j) = std::sqrt(lambda) * eig.eigenvectors().col(j);
            active.push_back(j);
        }
    }
    const auto [nodes, weights] = gauss_hermite(points_per_axis);
    const double norm = std::pow(std::acos(-1.0), -0.5 * active.size());

    std::vector<ComplexMatrix> kraus;
    std::vector<int> index(active.size(), 0);
    while (true) {
        Vector v = Vector::Zero(dim);
        double w = norm;
        for (std::size_t axis = 0; axis < active.size(); ++axis) {
            v += std::sqrt(2.0) * nodes(index[axis]) * root.col(active[axis]);
            w *= weights(index[axis]);
        }
        // Channel displacement by v acts as D_v^dag rho D_v.
        kraus.push_back(std::sqrt(w) *
                        displacement_op(v, cutoff).adjoint());
        std::size_t axis = 0;
        for (; axis < active.size(); ++axis) {
            if (++index[axis] < points_per_axis) break;
            index[axis] = 0;
        }
        if (axis == active.size()) break;
    }
    return kraus;
}

std::vector<ComplexMatrix> family_kraus(const std::string& family,
                                        double parameter, const Vector& delta,
                                        int cutoff) {
    const int n = static_cast<int>(delta.size()) / 2;
    std::vector<ComplexMatrix> core;
    if (family == "identity") {
        core = {ComplexMatrix::Identity(dimension(n, cutoff),
                                        dimension(n, cutoff))};
    } else if (family == "loss") {
        core = loss_kraus(parameter, cutoff);
    } else if (family == "amplifier") {
        core = amplifier_kraus(parameter, cutoff);
    } else if (family == "classical_noise") {
        core = classical_noise_kraus(
            parameter * Matrix::Identity(2 * n, 2 * n), cutoff);
    } else {
        throw std::invalid_argument("family_kraus: unknown family " + family);
    }
    if (delta.cwiseAbs().maxCoeff() > 0.0) {
        const ComplexMatrix shift = displacement_op(delta, cutoff).adjoint();
        for (ComplexMatrix& a : core) {
            a = (shift * a).eval();
        }
    }
    return core;
}

ComplexMatrix apply_kraus(const std::vector<ComplexMatrix>& kraus,
                          const ComplexMatrix& rho) {
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const ComplexMatrix& a : kraus) {
        out += a * rho * a.adjoint();
    }
    return out;
}

ComplexMatrix adjoint_kraus(const std::vector<ComplexMatrix>& kraus,
                            const ComplexMatrix& op) {
    ComplexMatrix out = ComplexMatrix::Zero(op.rows(), op.cols());
    for (const ComplexMatrix& a : kraus) {
        out += a.adjoint() * op * a;
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& op) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(op);
    if (eig.eigenvalues().minCoeff() < -1e-8) {
        throw std::domain_error(
            "psd_sqrt: operator has eigenvalue " +
            std::to_string(eig.eigenvalues().minCoeff()) + " below -1e-8");
    }
    Vector roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * roots.cast<Complex>().asDiagonal() *
           eig.eigenvectors().adjoint();
}

ComplexMatrix psd_inv_sqrt(const ComplexMatrix& op, double relative_floor,
                           bool* flagged) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(op);
    const double top = eig.eigenvalues().maxCoeff();
    if (top <= 0.0) {
        throw std::domain_error("psd_inv_sqrt: operator has no support");
    }
    const double floor = relative_floor * top;
    bool any_excluded = false;
    Vector inv_roots(eig.eigenvalues().size());
    for (int k = 0; k < inv_roots.size(); ++k) {
        const double lambda = eig.eigenvalues()(k);
        if (lambda > floor) {
            inv_roots(k) = 1.0 / std::sqrt(lambda);
        } else {
            inv_roots(k) = 0.0;  // generalized inverse on the support
            any_excluded = true;
        }
    }
    if (flagged != nullptr) *flagged = any_excluded;
    return eig.eigenvectors() * inv_roots.cast<Complex>().asDiagonal() *
           eig.eigenvectors().adjoint();
}

ComplexMatrix petz_map_dense(const ComplexMatrix& sigma_dense,
                             const std::vector<ComplexMatrix>& kraus,
                             const ComplexMatrix& operand) {
    const ComplexMatrix n_sigma = apply_kraus(kraus, sigma_dense);
    const ComplexMatrix sigma_half = psd_sqrt(sigma_dense);
    const ComplexMatrix pivot = psd_inv_sqrt(n_sigma, 1e-14);
    return sigma_half *
           adjoint_kraus(kraus, pivot * operand * pivot) * sigma_half;
}

ComplexMatrix petz_oracle(const GaussianState& sigma,
                          const std::vector<ComplexMatrix>& kraus,
                          const GaussianState& omega, int cutoff) {
    const ComplexMatrix sigma_dense = gaussian_density(sigma, cutoff);
    const ComplexMatrix omega_dense = gaussian_density(omega, cutoff);
    const ComplexMatrix out = petz_map_dense(sigma_dense, kraus, omega_dense);
    const double trace = out.trace().real();
    if (std::abs(trace - 1.0) > 0.05) {
        throw std::domain_error(
            "petz_oracle: output trace " + std::to_string(trace) +
            " drifted from 1; the dense inversion is truncation-dominated at "
            "this cutoff");
    }
    return out;
}

DenseMeasures dense_measures(const ComplexMatrix& rho,
                             const ComplexMatrix& sigma) {
    DenseMeasures result;

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_rho(rho);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_sigma(sigma);
    if (eig_rho.eigenvalues().minCoeff() < -1e-8 ||
        eig_sigma.eigenvalues().minCoeff() < -1e-8) {
        throw std::domain_error(
            "dense_measures: input has an eigenvalue below -1e-8");
    }

    // Fidelity: (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
    const ComplexMatrix rho_half = psd_sqrt(rho);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_mid(rho_half * sigma *
                                                         rho_half);
    double sqrt_sum = 0.0;
    for (int k = 0; k < eig_mid.eigenvalues().size(); ++k) {
        sqrt_sum += std::sqrt(std::max(0.0, eig_mid.eigenvalues()(k)));
    }
    result.fidelity = sqrt_sum * sqrt_sum;

    constexpr double kFloor = 1e-14;
    double entropy_rho = 0.0;
    for (int k = 0; k < eig_rho.eigenvalues().size(); ++k) {
        const double p = eig_rho.eigenvalues()(k);
        if (p > kFloor) entropy_rho -= p * std::log(p);
    }
    result.entropy_rho = entropy_rho;

    Vector log_sigma_eigs(eig_sigma.eigenvalues().size());
    for (int k = 0; k < log_sigma_eigs.size(); ++k) {
        double q = eig_sigma.eigenvalues()(k);
        if (q < kFloor) {
            q = kFloor;
            result.conditioning_flag = true;
        }
        log_sigma_eigs(k) = std::log(q);
    }
    const ComplexMatrix log_sigma = eig_sigma.eigenvectors() *
                                    log_sigma_eigs.cast<Complex>().asDiagonal() *
                                    eig_sigma.eigenvectors().adjoint();
    result.rel_entropy = -entropy_rho - (rho * log_sigma).trace().real();
    return result;
}

std::pair<Vector, Matrix> extract_moments(const ComplexMatrix& rho,
                                          int n_modes, int cutoff) {
    const std::vector<ComplexMatrix> r = quadratures(n_modes, cutoff);
    const double trace = rho.trace().real();
    Vector mean(2 * n_modes);
    for (int j = 0; j < 2 * n_modes; ++j) {
        mean(j) = (rho * r[j]).trace().real() / trace;
    }
    Matrix cov(2 * n_modes, 2 * n_modes);
    const int dim = dimension(n_modes, cutoff);
    for (int j = 0; j < 2 * n_modes; ++j) {
        const ComplexMatrix dj =
            r[j] - mean(j) * ComplexMatrix::Identity(dim, dim);
        for (int k = j; k < 2 * n_modes; ++k) {
            const ComplexMatrix dk =
                r[k] - mean(k) * ComplexMatrix::Identity(dim, dim);
            cov(j, k) = (rho * (dj * dk + dk * dj)).trace().real() / trace;
            cov(k, j) = cov(j, k);
        }
    }
    return {mean, cov};
}

}  // namespace fock
}  // namespace gausspetz
