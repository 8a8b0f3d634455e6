#include "gausspetz/petz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gausspetz {

namespace detail {

Matrix flow_matrix(const WilliamsonDecomposition& wd, double t) {
    const int n = static_cast<int>(wd.nu.size());
    Matrix core = Matrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const double h = 2.0 * arcoth(wd.nu(j));
        const double c = std::cos(t * h);
        const double s = std::sin(t * h);
        core(j, j) = c;
        core(n + j, n + j) = c;
        core(j, n + j) = s;
        core(n + j, j) = -s;
    }
    return wd.S * core * symplectic_inverse(wd.S);
}

namespace {

struct PetzParts {
    Matrix x_p;
    Matrix y_p;
    Vector delta_p;
    GaussianState sigma_out;
    WilliamsonDecomposition wd_sigma;
    WilliamsonDecomposition wd_out;
};

PetzParts build_petz(const GaussianState& sigma, const GaussianChannel& n) {
    if (sigma.n_modes != n.n_in()) {
        throw std::invalid_argument(
            "petz_channel: channel expects " + std::to_string(n.n_in()) +
            " modes, sigma has " + std::to_string(sigma.n_modes));
    }
    if (!validate_state(sigma).is_valid) {
        throw std::domain_error("petz_channel: sigma is not a valid state");
    }

    GaussianState sigma_out = apply(n, sigma);
    WilliamsonDecomposition wd_sigma = williamson(sigma.cov);
    WilliamsonDecomposition wd_out = williamson(sigma_out.cov);

    const double nu_min = wd_out.nu.minCoeff();
    if (nu_min < 1.0 + tol::faithfulness) {
        throw std::domain_error(
            "petz_channel: N(sigma) must be a faithful state (every "
            "symplectic eigenvalue strictly above 1); got minimum " +
            std::to_string(nu_min));
    }

    // sigma may have pure directions: its filter vanishes there and no
    // inverse of it is ever taken.
    const int ns = static_cast<int>(wd_sigma.nu.size());
    Vector g(2 * ns);
    for (int j = 0; j < ns; ++j) {
        const double val = 1.0 - 1.0 / (wd_sigma.nu(j) * wd_sigma.nu(j));
        g(j) = val > 0.0 ? std::sqrt(val) : 0.0;
        g(ns + j) = g(j);
    }
    const Matrix filter_sigma =
        wd_sigma.S * g.asDiagonal() * symplectic_inverse(wd_sigma.S);

    const int no = static_cast<int>(wd_out.nu.size());
    Vector ginv(2 * no);
    Vector vinv(2 * no);
    for (int j = 0; j < no; ++j) {
        ginv(j) = 1.0 / std::sqrt(1.0 - 1.0 / (wd_out.nu(j) * wd_out.nu(j)));
        ginv(no + j) = ginv(j);
        vinv(j) = 1.0 / wd_out.nu(j);
        vinv(no + j) = vinv(j);
    }
    const Matrix s_out_inv = symplectic_inverse(wd_out.S);
    const Matrix filter_out_inv = wd_out.S * ginv.asDiagonal() * s_out_inv;
    const Matrix cov_out_inv =
        s_out_inv.transpose() * vinv.asDiagonal() * s_out_inv;

    // The transposed filter sqrt(I + (Om V)^{-2}) is the transpose of the
    // V-Om filter, the function being even.
    Matrix x_p = filter_sigma * sigma.cov * n.X.transpose() *
                 filter_out_inv.transpose() * cov_out_inv;
    Matrix y_p = sigma.cov - x_p * sigma_out.cov * x_p.transpose();
    y_p = 0.5 * (y_p + y_p.transpose().eval());
    Vector delta_p = sigma.mean - x_p * (n.X * sigma.mean + n.delta);

    return PetzParts{std::move(x_p),       std::move(y_p),
                     std::move(delta_p),   std::move(sigma_out),
                     std::move(wd_sigma),  std::move(wd_out)};
}

PetzConstruction finish(PetzParts&& parts) {
    GaussianChannel channel(std::move(parts.x_p), std::move(parts.y_p),
                            std::move(parts.delta_p));
    const CpReport cp = check_cp(channel);
    return PetzConstruction{std::move(channel), cp.min_eigenvalue,
                            std::move(parts.sigma_out)};
}

}  // namespace

}  // namespace detail

PetzConstruction petz_channel(const GaussianState& sigma,
                              const GaussianChannel& n) {
    return detail::finish(detail::build_petz(sigma, n));
}

SymplecticFlow symplectic_flow(const GaussianState& sigma, double t) {
    const WilliamsonDecomposition wd = williamson(sigma.cov);
    if (wd.nu.minCoeff() < 1.0 + tol::faithfulness) {
        throw std::domain_error(
            "symplectic_flow: sigma must be faithful, its Hamiltonian matrix "
            "diverges on pure directions");
    }
    return SymplecticFlow{detail::flow_matrix(wd, t)};
}

RotatedPetzFamily::RotatedPetzFamily(const GaussianState& sigma,
                                     const GaussianChannel& n)
    : sigma_out_(GaussianState::vacuum(1)) {
    detail::PetzParts parts = detail::build_petz(sigma, n);
    if (parts.wd_sigma.nu.minCoeff() < 1.0 + tol::faithfulness) {
        throw std::domain_error(
            "rotated_petz: sigma must be faithful for the modular flow");
    }
    x_p_ = std::move(parts.x_p);
    y_p_ = std::move(parts.y_p);
    sigma_mean_ = sigma.mean;
    target_mean_ = n.X * sigma.mean + n.delta;
    sigma_out_ = std::move(parts.sigma_out);
    wd_sigma_ = std::move(parts.wd_sigma);
    wd_out_ = std::move(parts.wd_out);
}

GaussianChannel RotatedPetzFamily::at(double t) const {
    if (t == 0.0) {
        return GaussianChannel(x_p_, y_p_, sigma_mean_ - x_p_ * target_mean_);
    }
    const Matrix flow_sigma = detail::flow_matrix(wd_sigma_, t);
    const Matrix flow_out = detail::flow_matrix(wd_out_, -t);
    Matrix x_t = flow_sigma * x_p_ * flow_out;
    Matrix y_t = flow_sigma * y_p_ * flow_sigma.transpose();
    y_t = 0.5 * (y_t + y_t.transpose().eval());
    Vector delta_t = sigma_mean_ - x_t * target_mean_;
    return GaussianChannel(std::move(x_t), std::move(y_t), std::move(delta_t));
}

PetzConstruction rotated_petz(const GaussianState& sigma,
                              const GaussianChannel& n, double t) {
    const RotatedPetzFamily family(sigma, n);
    GaussianChannel channel = family.at(t);
    const CpReport cp = check_cp(channel);
    return PetzConstruction{std::move(channel), cp.min_eigenvalue,
                            family.sigma_out()};
}

CpReport cp_certificate(const PetzConstruction& construction) {
    return check_cp(construction.channel);
}

PetzIdentityValue verify_petz_identity(const GaussianState& sigma,
                                       const GaussianChannel& n,
                                       const Vector& w1, const Vector& w2) {
    if (w1.size() != 2 * n.n_out() || w2.size() != 2 * n.n_in()) {
        throw std::invalid_argument(
            "verify_petz_identity: w1 must have the output dimension and w2 "
            "the input dimension of the channel");
    }
    const PetzConstruction petz = petz_channel(sigma, n);

    const Matrix omega_in = symplectic_form(n.n_in());
    const Matrix omega_out = symplectic_form(n.n_out());
    const Matrix& v_sigma = sigma.cov;
    const Matrix& v_out = petz.sigma_out.cov;
    const Matrix g_sigma_v = sqrt_filter(v_sigma) * v_sigma;
    const Matrix g_out_v = sqrt_filter(v_out) * v_out;
    const Matrix& x_p = petz.channel.X;

    const Vector o_w1 = omega_out * w1;
    const Vector ot_w1 = omega_out.transpose() * w1;
    const Vector o_w2 = omega_in * w2;
    const Vector ot_w2 = omega_in.transpose() * w2;

    const double lhs_exp = -0.25 * ot_w1.dot(v_out * ot_w1) -
                           0.25 * o_w2.dot(v_sigma * o_w2) -
                           0.5 * ot_w1.dot(n.X * g_sigma_v * o_w2);

    const double rhs_exp =
        -0.25 * o_w1.dot(v_out * o_w1) -
        0.25 * ot_w2.dot(x_p * v_out * x_p.transpose() * ot_w2) -
        0.5 * o_w1.dot(g_out_v * x_p.transpose() * ot_w2) -
        0.25 * ot_w2.dot(petz.channel.Y * ot_w2);

    // Both traces carry the same mean-dependent phase.
    const double phase = -(n.X * sigma.mean + n.delta).dot(omega_out * w1) +
                         sigma.mean.dot(omega_in * w2);
    const Complex rotation(std::cos(phase), std::sin(phase));
    return PetzIdentityValue{std::exp(lhs_exp) * rotation,
                             std::exp(rhs_exp) * rotation};
}

}  // namespace gausspetz
