#ifndef GAUSSPETZ_CALCULUS_HPP
#define GAUSSPETZ_CALCULUS_HPP

#include "gausspetz/state.hpp"
#include "gausspetz/williamson.hpp"

namespace gausspetz {

/// sqrt(I + (V*Omega)^{-2}) for a valid covariance matrix V.
///
/// Evaluated through the Williamson form: the result is
/// S * (g (+) g) * S^{-1} with g_j = sqrt(1 - 1/nu_j^2), which avoids the
/// complex eigendecomposition of the non-normal matrix V*Omega. Pure
/// directions (nu_j = 1) give a zero block; nu_j < 1 is a domain error.
Matrix sqrt_filter(const Matrix& cov);

/// Inverse of sqrt_filter. Requires a faithful covariance (all nu_j
/// strictly above 1); throws std::domain_error otherwise.
Matrix sqrt_filter_inverse(const Matrix& cov);

/// Covariance matrix of the (normalized) square root of a zero-mean
/// Gaussian state: (sqrt_filter(V) + I) * V. Result is symmetric.
Matrix sqrt_state_covariance(const Matrix& cov);

/// Gaussian state as exp(-(r-s)^T H (r-s) / 2) / Z.
struct HamiltonianForm {
    Matrix H;
    double log_Z = 0.0;
};

/// Hamiltonian matrix of a faithful Gaussian state: carries symplectic
/// spectrum h_j = 2*arcoth(nu_j) in the Williamson frame of cov, with
/// log Z = -sum_j log(2 sinh(h_j / 2)).
HamiltonianForm hamiltonian_from_covariance(const GaussianState& state);
HamiltonianForm hamiltonian_from_covariance(const Matrix& cov);

/// Inverse of hamiltonian_from_covariance: V = coth(i Omega H / 2) i Omega,
/// evaluated blockwise as nu_j = coth(h_j / 2). H must be symmetric
/// positive definite.
Matrix covariance_from_hamiltonian(const Matrix& h);

/// Characteristic function chi(w) = Tr[rho D_{-w}]
///   = exp(-(Omega w)^T V (Omega w)/4 + i (Omega w)^T s).
Complex char_function(const GaussianState& state, const Vector& w);

/// Tr[D_{-y} sqrt(sigma0) D_x sqrt(sigma0)] for a zero-mean Gaussian state
/// with covariance cov_sigma:
///   exp(-x^T Om^T V Om x/4 - y^T Om^T V Om y/4
///       + x^T Om^T sqrt_filter(V) V Om y / 2).
Complex sandwich_char(const Matrix& cov_sigma, const Vector& x,
                      const Vector& y);

/// Covariance of sqrt(sigma0) * omega0 * sqrt(sigma0) (both zero mean):
///   V_sigma - F V_sigma (V_omega + V_sigma)^{-1} V_sigma F^T,
/// with F = sqrt_filter(V_sigma).
Matrix sqrt_sandwich_covariance(const Matrix& cov_sigma,
                                const Matrix& cov_omega);

namespace detail {

/// S * (f(nu) (+) f(nu)) * S^{-1} for a scalar function applied to the
/// symplectic spectrum of cov.
Matrix williamson_block_function(const Matrix& cov, double (*f)(double));

double arcoth(double x);

}  // namespace detail

}  // namespace gausspetz

#endif
