#ifndef GAUSSPETZ_SAMPLING_HPP
#define GAUSSPETZ_SAMPLING_HPP

#include <cstdint>
#include <string>

#include "gausspetz/channel.hpp"
#include "gausspetz/state.hpp"

namespace gausspetz {

/// Deterministic splitmix64 stream. Streams derived from (seed, counter)
/// are independent, so sample evaluation parallelizes without losing
/// byte-reproducibility; no libc or libstdc++ distribution is involved
/// anywhere, keeping outputs identical across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Stream for one sample of a seeded run.
    static Rng stream(std::uint64_t seed, std::uint64_t counter);

    std::uint64_t next();
    double uniform();  // [0, 1)
    double uniform(double lo, double hi);
    int uniform_int(int n);  // {0, ..., n-1}
    double gaussian();

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Random orthosymplectic matrix (the xxpp image of a Haar-ish unitary).
Matrix random_orthosymplectic(Rng& rng, int n_modes);

/// Random symplectic matrix: passive * squeeze * passive with per-mode
/// squeezing parameters drawn uniformly from [0, max_squeeze].
Matrix random_symplectic(Rng& rng, int n_modes, double max_squeeze = 1.0);

/// Random faithful Gaussian state: symplectic eigenvalues uniform in
/// [nu_min, nu_max], random symplectic frame, means uniform in
/// [-mean_range, mean_range].
GaussianState random_state(Rng& rng, int n_modes, double nu_min,
                           double nu_max, double mean_range,
                           double max_squeeze = 1.0);

/// One-mode state per the search distribution: squeezed thermal with
/// nu ~ U[1.05, 4], squeezing r ~ U[0, 1], rotation theta ~ U[0, 2pi),
/// mean ~ U[-2, 2]^2. Multi-mode inputs generalize with a random
/// symplectic frame.
GaussianState sample_search_state(Rng& rng, int n_modes);

struct SampledChannel {
    GaussianChannel channel;
    std::string family;  // "loss", "amplifier" or "classical_noise"
    double parameter;
};

/// Channel drawn uniformly from {loss eta in [0.1, 0.95], amplifier gain
/// in [1.05, 3], classical noise y*I with y in [0.1, 2]} with displacement
/// uniform in [-2, 2]^{2n}.
SampledChannel sample_search_channel(Rng& rng, int n_modes);

/// CP channel for property sweeps: a sampled core conjugated by random
/// symplectic unitaries on both sides.
GaussianChannel random_cp_channel(Rng& rng, int n_modes,
                                  double max_squeeze = 0.7);

}  // namespace gausspetz

#endif
