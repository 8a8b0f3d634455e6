#ifndef GAUSSPETZ_FOCK_HPP
#define GAUSSPETZ_FOCK_HPP

#include <string>
#include <utility>
#include <vector>

#include "gausspetz/channel.hpp"
#include "gausspetz/state.hpp"

namespace gausspetz {
namespace fock {

/// Dense truncated-Fock realizations of the Gaussian objects, used as the
/// ground-truth oracle at desk scale (1 mode up to cutoff ~60, 2 modes up
/// to cutoff ~12 per mode). Everything here is brute force by design.

int dimension(int n_modes, int cutoff);

/// Quadrature operators (x_1..x_n, p_1..p_n) at the given cutoff,
/// [x_j, p_j] = i away from the truncation corner.
std::vector<ComplexMatrix> quadratures(int n_modes, int cutoff);

/// Displacement operator D_z = exp(i z^T Omega r).
ComplexMatrix displacement_op(const Vector& z, int cutoff);

/// Normalized exp(-(r-s)^T H (r-s)/2) built from truncated quadratures.
/// Requires a faithful state; tail_mass (if given) receives the population
/// of the levels touching the cutoff in any mode.
ComplexMatrix gaussian_density(const GaussianState& state, int cutoff,
                               double* tail_mass = nullptr);

/// Kraus operators of the pure-loss channel with transmissivity eta.
std::vector<ComplexMatrix> loss_kraus(double eta, int cutoff);

/// Kraus operators of the quantum-limited amplifier with the given gain.
std::vector<ComplexMatrix> amplifier_kraus(double gain, int cutoff);

/// Additive classical noise as a Gauss-Hermite mixture of displacements
/// (weights folded into the operators, so the list is a Kraus set).
std::vector<ComplexMatrix> classical_noise_kraus(const Matrix& noise,
                                                 int cutoff,
                                                 int points_per_axis = 21);

/// Kraus set of a named-family channel with an optional displacement:
/// builds the core from (family, parameter) and conjugates by D_delta.
/// Families: "identity", "loss", "amplifier", "classical_noise".
std::vector<ComplexMatrix> family_kraus(const std::string& family,
                                        double parameter, const Vector& delta,
                                        int cutoff);

ComplexMatrix apply_kraus(const std::vector<ComplexMatrix>& kraus,
                          const ComplexMatrix& rho);
ComplexMatrix adjoint_kraus(const std::vector<ComplexMatrix>& kraus,
                            const ComplexMatrix& op);

/// Hermitian half power of a PSD operator.
ComplexMatrix psd_sqrt(const ComplexMatrix& op);

/// Generalized inverse square root: eigenvalues at or below the floor
/// (relative to the largest) are excluded from inversion. flagged reports
/// whether any exclusion happened.
ComplexMatrix psd_inv_sqrt(const ComplexMatrix& op, double relative_floor,
                           bool* flagged = nullptr);

/// Dense recovery map sigma^{1/2} N^dag(N(sigma)^{-1/2} (.) N(sigma)^{-1/2})
/// sigma^{1/2} applied to an arbitrary operand.
ComplexMatrix petz_map_dense(const ComplexMatrix& sigma_dense,
                             const std::vector<ComplexMatrix>& kraus,
                             const ComplexMatrix& operand);

/// Dense recovery of a Gaussian state omega. Output trace stays within a
/// few percent of 1 at adequate cutoffs; a larger drift means the dense
/// inversion is truncation-dominated and a domain error is raised.
ComplexMatrix petz_oracle(const GaussianState& sigma,
                          const std::vector<ComplexMatrix>& kraus,
                          const GaussianState& omega, int cutoff);

struct DenseMeasures {
    double fidelity = 0.0;
    double rel_entropy = 0.0;
    double entropy_rho = 0.0;
    bool conditioning_flag = false;
};

/// Spectral fidelity, relative entropy and entropy of dense density
/// matrices. Support mismatch in the relative entropy is handled with an
/// eigenvalue floor of 1e-14 and reported through conditioning_flag.
DenseMeasures dense_measures(const ComplexMatrix& rho,
                             const ComplexMatrix& sigma);

/// First and second (anticommutator) moments of a dense operator,
/// normalized by its trace.
std::pair<Vector, Matrix> extract_moments(const ComplexMatrix& rho,
                                          int n_modes, int cutoff);

}  // namespace fock
}  // namespace gausspetz

#endif
