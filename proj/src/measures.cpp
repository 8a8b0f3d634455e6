#include "gausspetz/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gausspetz {

namespace {

double entropy_term(double nu) {
    if (nu <= 1.0) return 0.0;
    const double up = 0.5 * (nu + 1.0);
    const double down = 0.5 * (nu - 1.0);
    return up * std::log(up) - down * std::log(down);
}

// Tr sqrt of a normalized Gaussian state, per symplectic eigenvalue:
// the thermal spectrum (1-q) q^k gives sqrt(1-q) / (1 - sqrt(q)).
double sqrt_trace_factor(double nu) {
    const double q = std::max(0.0, (nu - 1.0) / (nu + 1.0));
    return std::sqrt(1.0 - q) / (1.0 - std::sqrt(q));
}

}  // namespace

double entropy(const GaussianState& state) {
    const Vector nu = symplectic_eigenvalues(state.cov);
    double total = 0.0;
    for (int j = 0; j < nu.size(); ++j) {
        total += entropy_term(nu(j));
    }
    return total;
}

double relative_entropy(const GaussianState& rho, const GaussianState& sigma) {
    if (rho.n_modes != sigma.n_modes) {
        throw std::invalid_argument("relative_entropy: mode count mismatch");
    }
    HamiltonianForm form;
    try {
        form = hamiltonian_from_covariance(sigma.cov);
    } catch (const std::domain_error&) {
        throw std::domain_error(
            "relative_entropy: sigma must be faithful, the relative entropy "
            "is +infinity outside its support");
    }
    const Vector d = rho.mean - sigma.mean;
    return -entropy(rho) + 0.25 * (form.H * rho.cov).trace() +
           0.5 * d.dot(form.H * d) + form.log_Z;
}

double fidelity(const GaussianState& rho, const GaussianState& sigma) {
    if (rho.n_modes != sigma.n_modes) {
        throw std::invalid_argument("fidelity: mode count mismatch");
    }
    const int n = rho.n_modes;
    const Matrix sum = rho.cov + sigma.cov;
    const Vector d = rho.mean - sigma.mean;

    Eigen::LLT<Matrix> llt(sum);
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("fidelity: covariance sum is not positive");
    }
    // Tr[rho sigma] = 2^n det(V_rho + V_sigma)^{-1/2} exp(-d^T (sum)^{-1} d)
    double log_overlap = n * std::numbers::ln2 - d.dot(llt.solve(d));
    const Matrix& l = llt.matrixLLT();
    for (int j = 0; j < sum.rows(); ++j) {
        log_overlap -= std::log(l(j, j));
    }

    const Matrix sandwiched = sqrt_sandwich_covariance(sigma.cov, rho.cov);
    const Vector nu = symplectic_eigenvalues(sandwiched);
    double sqrt_trace = 1.0;
    for (int j = 0; j < nu.size(); ++j) {
        sqrt_trace *= sqrt_trace_factor(nu(j));
    }
    const double f = std::exp(log_overlap) * sqrt_trace * sqrt_trace;
    return std::min(f, 1.0);
}

DeficitReport recovery_deficit(const GaussianState& rho,
                               const GaussianState& sigma,
                               const GaussianChannel& n) {
    DeficitReport report;
    try {
        report.d_in = relative_entropy(rho, sigma);
    } catch (const std::domain_error& err) {
        throw std::domain_error(std::string("recovery_deficit, input term: ") +
                                err.what());
    }
    try {
        report.d_out = relative_entropy(apply(n, rho), apply(n, sigma));
    } catch (const std::domain_error& err) {
        throw std::domain_error(std::string("recovery_deficit, output term: ") +
                                err.what());
    }

    const PetzConstruction petz = petz_channel(sigma, n);
    const GaussianState recovered = apply(petz.channel, apply(n, rho));
    const double nu_min = symplectic_eigenvalues(recovered.cov).minCoeff();
    if (nu_min < 1.0 + tol::faithfulness) {
        report.near_singular = true;
        report.d_recovery = std::numeric_limits<double>::quiet_NaN();
        report.deficit = std::numeric_limits<double>::quiet_NaN();
        return report;
    }
    try {
        report.d_recovery = relative_entropy(rho, recovered);
    } catch (const std::domain_error& err) {
        throw std::domain_error(
            std::string("recovery_deficit, recovery term: ") + err.what());
    }
    report.deficit = report.d_in - report.d_out - report.d_recovery;
    return report;
}

double recovery_weight(double t) {
    // pi/2 / (cosh(pi t) + 1) = pi/4 * sech(pi t / 2)^2
    const double c = std::cosh(0.5 * std::numbers::pi * t);
    return 0.25 * std::numbers::pi / (c * c);
}

RecoveryBound fidelity_recovery_bound(const GaussianState& rho,
                                      const GaussianState& sigma,
                                      const GaussianChannel& n,
                                      const QuadratureConfig& quad) {
    if (quad.points < 2 || quad.half_range <= 0.0) {
        throw std::invalid_argument(
            "fidelity_recovery_bound: quadrature needs at least two points "
            "and a positive half range");
    }
    // Mass of p outside [-T, T] is 1 - tanh(pi T / 2).
    const double tail =
        1.0 - std::tanh(0.5 * std::numbers::pi * quad.half_range);
    if (tail > 1e-4) {
        throw std::invalid_argument(
            "fidelity_recovery_bound: quadrature half range " +
            std::to_string(quad.half_range) + " leaves tail mass " +
            std::to_string(tail) + " > 1e-4");
    }

    RecoveryBound bound;
    bound.lhs = relative_entropy(rho, sigma);

    const GaussianState n_rho = apply(n, rho);
    bound.rhs = relative_entropy(n_rho, apply(n, sigma));

    const RotatedPetzFamily family(sigma, n);
    const double step = 2.0 * quad.half_range / (quad.points - 1);
    double mass = 0.0;
    double integral = 0.0;
    for (int k = 0; k < quad.points; ++k) {
        const double t = -quad.half_range + k * step;
        const double weight =
            (k == 0 || k == quad.points - 1) ? 0.5 * step : step;
        const double p = recovery_weight(t);
        const GaussianState recovered = apply(family.at(0.5 * t), n_rho);
        integral += weight * p * std::log(fidelity(rho, recovered));
        mass += weight * p;
    }
    bound.quadrature_mass = mass;
    bound.rhs -= integral;
    bound.slack = bound.lhs - bound.rhs;
    return bound;
}

}  // namespace gausspetz
