#include "gausspetz/sampling.hpp"

#include <cmath>
#include <numbers>

namespace gausspetz {

namespace {

std::uint64_t splitmix_step(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix_step(s);
    s ^= counter * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    const std::uint64_t b = splitmix_step(s);
    return Rng(a ^ b);
}

std::uint64_t Rng::next() { return splitmix_step(state_); }

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

int Rng::uniform_int(int n) {
    return static_cast<int>(next() % static_cast<std::uint64_t>(n));
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Matrix random_orthosymplectic(Rng& rng, int n_modes) {
    // QR of a complex Ginibre matrix with the phase convention fixed, then
    // the xxpp real image U = A + iB -> [[A, -B], [B, A]].
    ComplexMatrix ginibre(n_modes, n_modes);
    for (int r = 0; r < n_modes; ++r) {
        for (int c = 0; c < n_modes; ++c) {
            ginibre(r, c) = Complex(rng.gaussian(), rng.gaussian());
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < n_modes; ++c) {
        const Complex diag = r(c, c);
        if (std::abs(diag) > 0.0) {
            q.col(c) *= diag / std::abs(diag);
        }
    }
    Matrix out(2 * n_modes, 2 * n_modes);
    out.topLeftCorner(n_modes, n_modes) = q.real();
    out.topRightCorner(n_modes, n_modes) = -q.imag();
    out.bottomLeftCorner(n_modes, n_modes) = q.imag();
    out.bottomRightCorner(n_modes, n_modes) = q.real();
    return out;
}

Matrix random_symplectic(Rng& rng, int n_modes, double max_squeeze) {
    const Matrix left = random_orthosymplectic(rng, n_modes);
    const Matrix right = random_orthosymplectic(rng, n_modes);
    Vector z(2 * n_modes);
    for (int j = 0; j < n_modes; ++j) {
        const double r = rng.uniform(0.0, max_squeeze);
        z(j) = std::exp(r);
        z(n_modes + j) = std::exp(-r);
    }
    return left * z.asDiagonal() * right;
}

GaussianState random_state(Rng& rng, int n_modes, double nu_min, double nu_max,
                           double mean_range, double max_squeeze) {
    const Matrix s = random_symplectic(rng, n_modes, max_squeeze);
    Vector d(2 * n_modes);
    for (int j = 0; j < n_modes; ++j) {
        d(j) = rng.uniform(nu_min, nu_max);
        d(n_modes + j) = d(j);
    }
    Matrix cov = s * d.asDiagonal() * s.transpose();
    cov = 0.5 * (cov + cov.transpose().eval());
    Vector mean(2 * n_modes);
    for (int j = 0; j < 2 * n_modes; ++j) {
        mean(j) = rng.uniform(-mean_range, mean_range);
    }
    return GaussianState(std::move(mean), std::move(cov));
}

GaussianState sample_search_state(Rng& rng, int n_modes) {
    if (n_modes == 1) {
        const double nu = rng.uniform(1.05, 4.0);
        const double r = rng.uniform(0.0, 1.0);
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        Matrix squeeze = Matrix::Zero(2, 2);
        squeeze(0, 0) = std::exp(2.0 * r);
        squeeze(1, 1) = std::exp(-2.0 * r);
        Matrix rot(2, 2);
        rot << std::cos(theta), std::sin(theta), -std::sin(theta),
            std::cos(theta);
        Matrix cov = nu * rot * squeeze * rot.transpose();
        cov = 0.5 * (cov + cov.transpose().eval());
        Vector mean(2);
        mean << rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0);
        return GaussianState(std::move(mean), std::move(cov));
    }
    return random_state(rng, n_modes, 1.05, 4.0, 2.0);
}

SampledChannel sample_search_channel(Rng& rng, int n_modes) {
    const int dim = 2 * n_modes;
    const int family = rng.uniform_int(3);
    Vector delta(dim);
    for (int j = 0; j < dim; ++j) {
        delta(j) = rng.uniform(-2.0, 2.0);
    }
    if (family == 0) {
        const double eta = rng.uniform(0.1, 0.95);
        GaussianChannel channel = GaussianChannel::loss(eta, n_modes);
        channel.delta = delta;
        return {std::move(channel), "loss", eta};
    }
    if (family == 1) {
        const double gain = rng.uniform(1.05, 3.0);
        GaussianChannel channel = GaussianChannel::amplifier(gain, n_modes);
        channel.delta = delta;
        return {std::move(channel), "amplifier", gain};
    }
    const double y = rng.uniform(0.1, 2.0);
    GaussianChannel channel =
        GaussianChannel::classical_noise(y * Matrix::Identity(dim, dim));
    channel.delta = delta;
    return {std::move(channel), "classical_noise", y};
}

GaussianChannel random_cp_channel(Rng& rng, int n_modes, double max_squeeze) {
    const Matrix before = random_symplectic(rng, n_modes, max_squeeze);
    const Matrix after = random_symplectic(rng, n_modes, max_squeeze);
    const SampledChannel core = sample_search_channel(rng, n_modes);
    Matrix x = after * core.channel.X * before;
    Matrix y = after * core.channel.Y * after.transpose();
    y = 0.5 * (y + y.transpose().eval());
    return GaussianChannel(std::move(x), std::move(y),
                           after * core.channel.delta);
}

}  // namespace gausspetz
