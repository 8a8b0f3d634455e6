// Command-line driver: construct and certify recovery channels, check the
// recovery identity on a grid, search for negative recovery deficits, and
// run the dense Fock-basis comparison battery.
//
// Exit codes: 0 success, 1 check failed / nothing found, 2 faithfulness
// hypothesis violated, 3 malformed input or configuration.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gausspetz/fock.hpp"
#include "gausspetz/json_io.hpp"
#include "gausspetz/measures.hpp"
#include "gausspetz/petz.hpp"
#include "gausspetz/search.hpp"

namespace {

using namespace gausspetz;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitNotFaithful = 2;
constexpr int kExitBadInput = 3;

bool is_faithfulness_error(const std::string& message) {
    return message.find("faithful") != std::string::npos;
}

int run_petz_command(const std::string& state_path,
                     const std::string& channel_path,
                     const std::string& out_path, double tolerance) {
    const GaussianState sigma = load_state(state_path);
    const GaussianChannel channel = load_channel(channel_path);
    const PetzConstruction petz = petz_channel(sigma, channel);

    const GaussianState recovered = apply(petz.channel, petz.sigma_out);
    const double reversal_defect =
        std::max((recovered.cov - sigma.cov).cwiseAbs().maxCoeff(),
                 (recovered.mean - sigma.mean).cwiseAbs().maxCoeff());

    nlohmann::json out{{"X_P", to_json(petz.channel.X)},
                       {"Y_P", to_json(petz.channel.Y)},
                       {"delta_P", to_json(petz.channel.delta)},
                       {"cp_min_eigenvalue", petz.cp_min_eigenvalue},
                       {"reversal_defect", reversal_defect}};
    if (!out_path.empty()) {
        write_json(out_path, out);
    }
    std::cout << out.dump(2) << "\n";

    const bool pass = petz.cp_min_eigenvalue >= -tol::uncertainty_slack &&
                      reversal_defect <= tolerance;
    return pass ? kExitPass : kExitFail;
}

// Deterministic space-filling probe points in [-2, 2]^dim (Kronecker
// low-discrepancy sequence).
Vector probe_point(int index, int dim, int salt) {
    Vector w(dim);
    for (int c = 0; c < dim; ++c) {
        const double alpha =
            std::sqrt(static_cast<double>(2 + 3 * c + 7 * salt + 2));
        const double frac = std::fmod((index + 1) * alpha, 1.0);
        w(c) = -2.0 + 4.0 * frac;
    }
    return w;
}

int run_verify_command(const std::string& state_path,
                       const std::string& channel_path, int grid,
                       double tolerance, bool inject_fault) {
    const GaussianState sigma = load_state(state_path);
    GaussianChannel channel = load_channel(channel_path);

    // Negative control: corrupt the channel noise so the identity must
    // fail. The lhs keeps the original channel.
    const GaussianChannel* lhs_channel = &channel;
    GaussianChannel corrupted = channel;
    if (inject_fault) {
        corrupted.Y += 0.05 * Matrix::Identity(corrupted.Y.rows(),
                                               corrupted.Y.cols());
    }

    double max_defect = 0.0;
    Vector worst_w1, worst_w2;
    for (int i = 0; i < grid; ++i) {
        const Vector w1 = probe_point(i, 2 * channel.n_out(), 0);
        for (int j = 0; j < grid; ++j) {
            const Vector w2 = probe_point(j, 2 * channel.n_in(), 1);
            PetzIdentityValue value =
                verify_petz_identity(sigma, *lhs_channel, w1, w2);
            if (inject_fault) {
                const PetzIdentityValue corrupted_value =
                    verify_petz_identity(sigma, corrupted, w1, w2);
                value.rhs = corrupted_value.rhs;
            }
            const double defect = std::abs(value.lhs - value.rhs);
            if (defect > max_defect) {
                max_defect = defect;
                worst_w1 = w1;
                worst_w2 = w2;
            }
        }
    }
    nlohmann::json out{{"grid", grid},
                       {"max_defect", max_defect},
                       {"tolerance", tolerance},
                       {"pass", max_defect <= tolerance}};
    if (worst_w1.size() > 0) {
        out["worst_w1"] = to_json(worst_w1);
        out["worst_w2"] = to_json(worst_w2);
    }
    std::cout << out.dump(2) << "\n";
    return max_defect <= tolerance ? kExitPass : kExitFail;
}

int run_search_command(std::uint64_t seed, std::uint64_t samples, int modes,
                       const std::string& out_path) {
    const SearchResult result = search_counterexamples(seed, samples, modes);
    const nlohmann::json out =
        search_result_to_json(result, seed, samples, modes);
    if (!out_path.empty()) {
        write_json(out_path, out);
    }
    std::cout << out.dump(2) << "\n";
    return result.found ? kExitPass : kExitFail;
}

int run_bound_command(const std::string& rho_path,
                      const std::string& sigma_path,
                      const std::string& channel_path, int quad_points,
                      double quad_range) {
    const GaussianState rho = load_state(rho_path);
    const GaussianState sigma = load_state(sigma_path);
    const GaussianChannel channel = load_channel(channel_path);
    const QuadratureConfig config{quad_range, quad_points};
    const RecoveryBound bound =
        fidelity_recovery_bound(rho, sigma, channel, config);
    nlohmann::json out{{"lhs", bound.lhs},
                       {"rhs", bound.rhs},
                       {"slack", bound.slack},
                       {"quadrature_mass", bound.quadrature_mass}};
    std::cout << out.dump(2) << "\n";
    return bound.slack >= -1e-6 ? kExitPass : kExitFail;
}

struct OracleCheck {
    std::string name;
    double defect;
    double tolerance;
    std::string note;
};

void run_char_function_checks(int cutoff, std::vector<OracleCheck>& checks) {
    const GaussianState thermal = GaussianState::thermal(1, 3.0);
    GaussianState displaced(Vector::Zero(2), thermal.cov);
    displaced.mean << 1.0, -0.5;
    const ComplexMatrix rho = fock::gaussian_density(displaced, cutoff);

    double worst = 0.0;
    for (double wx = -1.5; wx <= 1.5; wx += 0.75) {
        for (double wp = -1.5; wp <= 1.5; wp += 0.75) {
            Vector w(2);
            w << wx, wp;
            const Complex dense =
                (rho * fock::displacement_op(-w, cutoff)).trace();
            const Complex closed = char_function(displaced, w);
            worst = std::max(worst, std::abs(dense - closed));
        }
    }
    checks.push_back({"char_function vs dense trace", worst, 1e-4, ""});
}

void run_sqrt_checks(int cutoff, std::vector<OracleCheck>& checks) {
    for (const double nu : {1.5, 2.0, 3.0}) {
        const GaussianState state = GaussianState::thermal(1, nu);
        double tail = 0.0;
        const ComplexMatrix rho = fock::gaussian_density(state, cutoff, &tail);
        const ComplexMatrix root = fock::psd_sqrt(rho);
        const double square_defect = (root * root - rho).norm();

        const auto [mean, cov] = fock::extract_moments(root, 1, cutoff);
        const double cov_defect =
            (cov - sqrt_state_covariance(state.cov)).cwiseAbs().maxCoeff();
        checks.push_back({"sqrt covariance, nu=" + std::to_string(nu),
                          std::max(square_defect, cov_defect), 1e-3,
                          "tail mass " + std::to_string(tail)});
    }
}

void run_sandwich_checks(int cutoff, std::vector<OracleCheck>& checks) {
    for (const double nu : {1.5, 3.0}) {
        const GaussianState state = GaussianState::thermal(1, nu);
        const ComplexMatrix root =
            fock::psd_sqrt(fock::gaussian_density(state, cutoff));
        double worst = 0.0;
        for (double a = -2.0; a <= 2.0; a += 1.0) {
            for (double b = -2.0; b <= 2.0; b += 1.0) {
                Vector x(2), y(2);
                x << a, 0.5 * b;
                y << 0.5 * a, -b;
                const Complex dense = (fock::displacement_op(-y, cutoff) *
                                       root *
                                       fock::displacement_op(x, cutoff) * root)
                                          .trace();
                const Complex closed = sandwich_char(state.cov, x, y);
                worst = std::max(worst, std::abs(dense - closed));
            }
        }
        checks.push_back(
            {"sandwich trace vs dense, nu=" + std::to_string(nu), worst, 1e-4,
             ""});
    }
}

void run_petz_oracle_checks(int cutoff, std::vector<OracleCheck>& checks) {
    const GaussianState sigma = GaussianState::thermal(1, 3.0);
    const GaussianChannel channel = GaussianChannel::loss(0.5);
    const std::vector<ComplexMatrix> kraus = fock::loss_kraus(0.5, cutoff);

    const PetzConstruction petz = petz_channel(sigma, channel);
    const GaussianState omega = GaussianState::thermal(1, 2.5);
    const ComplexMatrix dense = fock::petz_oracle(sigma, kraus, omega, cutoff);
    const auto [mean, cov] = fock::extract_moments(dense, 1, cutoff);
    const GaussianState predicted = apply(petz.channel, omega);
    const double defect =
        std::max((cov - predicted.cov).cwiseAbs().maxCoeff(),
                 (mean - predicted.mean).cwiseAbs().maxCoeff());
    checks.push_back({"recovery map dense vs closed form", defect, 1e-3, ""});

    const ComplexMatrix anchor =
        fock::petz_oracle(sigma, kraus, apply(channel, sigma), cutoff);
    const auto [anchor_mean, anchor_cov] =
        fock::extract_moments(anchor, 1, cutoff);
    const double anchor_defect =
        std::max((anchor_cov - sigma.cov).cwiseAbs().maxCoeff(),
                 anchor_mean.cwiseAbs().maxCoeff());
    checks.push_back({"reversal anchor dense", anchor_defect, 1e-3, ""});
}

void run_measure_checks(int cutoff, std::vector<OracleCheck>& checks) {
    const GaussianState vacuum_like = GaussianState::thermal(1, 1.0 + 1e-9);
    const GaussianState thermal = GaussianState::thermal(1, 3.0);
    const ComplexMatrix rho = fock::gaussian_density(vacuum_like, cutoff);
    const ComplexMatrix tau = fock::gaussian_density(thermal, cutoff);
    const fock::DenseMeasures dense = fock::dense_measures(rho, tau);
    checks.push_back({"F(vacuum, thermal n=1) = 1/2",
                      std::abs(dense.fidelity - 0.5), 1e-4, ""});
    checks.push_back({"D(vacuum || thermal n=1) = ln 2",
                      std::abs(dense.rel_entropy - std::log(2.0)), 1e-4, ""});
    checks.push_back(
        {"fidelity closed vs dense",
         std::abs(fidelity(vacuum_like, thermal) - dense.fidelity), 1e-4, ""});
    checks.push_back({"relative entropy closed vs dense",
                      std::abs(relative_entropy(vacuum_like, thermal) -
                               dense.rel_entropy),
                      1e-4, ""});
}

void run_kraus_checks(int cutoff, std::vector<OracleCheck>& checks) {
    const std::vector<ComplexMatrix> kraus = fock::loss_kraus(0.5, cutoff);
    ComplexMatrix completeness =
        ComplexMatrix::Zero(cutoff, cutoff);
    for (const ComplexMatrix& a : kraus) {
        completeness += a.adjoint() * a;
    }
    const int keep = cutoff - 5;
    const double defect = (completeness.topLeftCorner(keep, keep) -
                           ComplexMatrix::Identity(keep, keep))
                              .cwiseAbs()
                              .maxCoeff();
    checks.push_back({"loss Kraus completeness", defect, 1e-8, ""});

    const GaussianState thermal = GaussianState::thermal(1, 3.0);
    const ComplexMatrix out =
        fock::apply_kraus(kraus, fock::gaussian_density(thermal, cutoff));
    const auto [mean, cov] = fock::extract_moments(out, 1, cutoff);
    const double moment_defect =
        (cov - 2.0 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
    checks.push_back(
        {"loss on thermal n=1 gives cov 2I", moment_defect, 1e-4, ""});
}

int run_oracle_command(int cutoff, double tolerance) {
    std::vector<OracleCheck> checks;
    run_char_function_checks(cutoff, checks);
    run_sqrt_checks(cutoff, checks);
    run_sandwich_checks(cutoff, checks);
    run_petz_oracle_checks(cutoff, checks);
    run_measure_checks(std::max(cutoff, 60), checks);
    run_kraus_checks(cutoff, checks);

    int failures = 0;
    for (const OracleCheck& check : checks) {
        const double limit = std::max(check.tolerance, tolerance);
        const bool pass = check.defect <= limit;
        if (!pass) ++failures;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << check.name
                  << "  defect=" << check.defect << "  tol=" << limit;
        if (!check.note.empty()) std::cout << "  (" << check.note << ")";
        std::cout << "\n";
    }
    std::cout << (failures == 0 ? "all checks passed"
                                : std::to_string(failures) + " checks failed")
              << " at cutoff " << cutoff << "\n";
    return failures == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian recovery-channel toolkit"};
    app.require_subcommand(1);

    std::string state_path, channel_path, rho_path, sigma_path, out_path;
    double tolerance = 1e-10;
    int grid = 8;
    bool inject_fault = false;
    std::uint64_t seed = 42;
    std::uint64_t samples = 100000;
    int modes = 1;
    int quad_points = 201;
    double quad_range = 5.0;
    int cutoff = 40;
    double oracle_tol = 1e-3;

    CLI::App* petz = app.add_subcommand(
        "petz", "construct the recovery channel for a state and a channel");
    petz->add_option("--state", state_path)->required();
    petz->add_option("--channel", channel_path)->required();
    petz->add_option("--out", out_path);
    petz->add_option("--tol", tolerance);

    CLI::App* verify = app.add_subcommand(
        "verify", "check the recovery identity on a probe grid");
    verify->add_option("--state", state_path)->required();
    verify->add_option("--channel", channel_path)->required();
    verify->add_option("--grid", grid);
    verify->add_option("--tol", tolerance);
    verify->add_flag("--inject-fault", inject_fault,
                     "corrupt the construction to prove the check can fail");

    CLI::App* search = app.add_subcommand(
        "search", "randomized search for negative recovery deficits");
    search->add_option("--seed", seed);
    search->add_option("--samples", samples);
    search->add_option("--modes", modes)->check(CLI::Range(1, 2));
    search->add_option("--out", out_path);

    CLI::App* bound = app.add_subcommand(
        "bound", "evaluate the averaged-recovery entropy bound");
    bound->add_option("--rho", rho_path)->required();
    bound->add_option("--sigma", sigma_path)->required();
    bound->add_option("--channel", channel_path)->required();
    bound->add_option("--quad-points", quad_points);
    bound->add_option("--quad-range", quad_range);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "dense Fock-basis comparison battery");
    oracle->add_option("--cutoff", cutoff)->check(CLI::Range(2, 60));
    oracle->add_option("--tol", oracle_tol);

    CLI11_PARSE(app, argc, argv);

    try {
        if (petz->parsed()) {
            return run_petz_command(state_path, channel_path, out_path,
                                    tolerance);
        }
        if (verify->parsed()) {
            return run_verify_command(state_path, channel_path, grid,
                                      tolerance, inject_fault);
        }
        if (search->parsed()) {
            return run_search_command(seed, samples, modes, out_path);
        }
        if (bound->parsed()) {
            return run_bound_command(rho_path, sigma_path, channel_path,
                                     quad_points, quad_range);
        }
        if (oracle->parsed()) {
            return run_oracle_command(cutoff, oracle_tol);
        }
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return is_faithfulness_error(err.what()) ? kExitNotFaithful
                                                 : kExitBadInput;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
