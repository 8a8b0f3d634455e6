#include "gausspetz/calculus.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gausspetz {

namespace detail {

double arcoth(double x) { return 0.5 * std::log((x + 1.0) / (x - 1.0)); }

Matrix williamson_block_function(const Matrix& cov, double (*f)(double)) {
    const WilliamsonDecomposition wd = williamson(cov);
    const int n = static_cast<int>(wd.nu.size());
    Vector d(2 * n);
    for (int j = 0; j < n; ++j) {
        d(j) = f(wd.nu(j));
        d(n + j) = d(j);
    }
    return wd.S * d.asDiagonal() * symplectic_inverse(wd.S);
}

namespace {

double filter_scalar(double nu) {
    if (nu < 1.0 - tol::faithfulness) {
        throw std::domain_error(
            "sqrt_filter: symplectic eigenvalue " + std::to_string(nu) +
            " below 1, covariance is not a valid quantum covariance");
    }
    const double g = 1.0 - 1.0 / (nu * nu);
    return g > 0.0 ? std::sqrt(g) : 0.0;
}

double filter_inverse_scalar(double nu) {
    if (nu < 1.0 + tol::faithfulness) {
        throw std::domain_error(
            "sqrt_filter_inverse: symplectic eigenvalue " + std::to_string(nu) +
            " is not strictly above 1; the filter is singular on pure "
            "directions and requires a faithful state");
    }
    return 1.0 / std::sqrt(1.0 - 1.0 / (nu * nu));
}

}  // namespace

}  // namespace detail

Matrix sqrt_filter(const Matrix& cov) {
    return detail::williamson_block_function(cov, &detail::filter_scalar);
}

Matrix sqrt_filter_inverse(const Matrix& cov) {
    return detail::williamson_block_function(cov,
                                             &detail::filter_inverse_scalar);
}

Matrix sqrt_state_covariance(const Matrix& cov) {
    const int dim = static_cast<int>(cov.rows());
    Matrix u = (sqrt_filter(cov) + Matrix::Identity(dim, dim)) * cov;
    return 0.5 * (u + u.transpose().eval());
}

HamiltonianForm hamiltonian_from_covariance(const Matrix& cov) {
    const WilliamsonDecomposition wd = williamson(cov);
    const int n = static_cast<int>(wd.nu.size());
    Vector h(2 * n);
    double log_z = 0.0;
    for (int j = 0; j < n; ++j) {
        if (wd.nu(j) < 1.0 + tol::faithfulness) {
            throw std::domain_error(
                "hamiltonian_from_covariance: symplectic eigenvalue " +
                std::to_string(wd.nu(j)) +
                " is not strictly above 1; the Hamiltonian matrix diverges "
                "for non-faithful states");
        }
        const double hj = 2.0 * detail::arcoth(wd.nu(j));
        h(j) = hj;
        h(n + j) = hj;
        log_z -= std::log(2.0 * std::sinh(0.5 * hj));
    }
    const Matrix s_inv = symplectic_inverse(wd.S);
    HamiltonianForm form;
    Matrix hm = s_inv.transpose() * h.asDiagonal() * s_inv;
    form.H = 0.5 * (hm + hm.transpose().eval());
    form.log_Z = log_z;
    return form;
}

HamiltonianForm hamiltonian_from_covariance(const GaussianState& state) {
    return hamiltonian_from_covariance(state.cov);
}

Matrix covariance_from_hamiltonian(const Matrix& h) {
    if (symmetry_defect(h) > tol::symmetry) {
        throw std::domain_error(
            "covariance_from_hamiltonian: Hamiltonian matrix must be symmetric");
    }
    // williamson() rejects non positive definite input.
    const WilliamsonDecomposition wd = williamson(h);
    const int n = static_cast<int>(wd.nu.size());
    Vector d(2 * n);
    for (int j = 0; j < n; ++j) {
        d(j) = 1.0 / std::tanh(0.5 * wd.nu(j));
        d(n + j) = d(j);
    }
    const Matrix s_inv = symplectic_inverse(wd.S);
    Matrix cov = s_inv.transpose() * d.asDiagonal() * s_inv;
    return 0.5 * (cov + cov.transpose().eval());
}

Complex char_function(const GaussianState& state, const Vector& w) {
    if (w.size() != state.cov.rows()) {
        throw std::invalid_argument("char_function: argument dimension mismatch");
    }
    const Matrix omega = symplectic_form(state.n_modes);
    const Vector ow = omega * w;
    const double quad = -0.25 * ow.dot(state.cov * ow);
    const double phase = ow.dot(state.mean);
    return std::exp(quad) * Complex(std::cos(phase), std::sin(phase));
}

Complex sandwich_char(const Matrix& cov_sigma, const Vector& x,
                      const Vector& y) {
    const int n = static_cast<int>(cov_sigma.rows()) / 2;
    const Matrix omega = symplectic_form(n);
    const Vector ox = omega * x;
    const Vector oy = omega * y;
    // x^T Om^T V Om x = (Om x)^T V (Om x) since Om^T ... Om sandwiches.
    const double quad =
        -0.25 * ox.dot(cov_sigma * ox) - 0.25 * oy.dot(cov_sigma * oy);
    const double cross = 0.5 * ox.dot(sqrt_filter(cov_sigma) * cov_sigma * oy);
    return Complex(std::exp(quad + cross), 0.0);
}

Matrix sqrt_sandwich_covariance(const Matrix& cov_sigma,
                                const Matrix& cov_omega) {
    const Matrix fv = sqrt_filter(cov_sigma) * cov_sigma;
    Matrix sum = cov_omega + cov_sigma;
    Eigen::FullPivLU<Matrix> lu(sum);
    Matrix middle;
    if (lu.isInvertible()) {
        middle = lu.solve(fv.transpose());
    } else {
        // Cannot occur for valid covariances (the sum is >= 2 * positive);
        // fall back to a pseudo-inverse for malformed input.
        middle = sum.completeOrthogonalDecomposition().solve(fv.transpose());
    }
    Matrix out = cov_sigma - fv * middle;
    return 0.5 * (out + out.transpose().eval());
}

}  // namespace gausspetz
