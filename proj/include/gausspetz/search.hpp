#ifndef GAUSSPETZ_SEARCH_HPP
#define GAUSSPETZ_SEARCH_HPP

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "gausspetz/measures.hpp"
#include "gausspetz/sampling.hpp"

namespace gausspetz {

struct SearchRecord {
    std::uint64_t sample_index = 0;
    GaussianState rho;
    GaussianState sigma;
    SampledChannel channel;
    DeficitReport report;
};

struct SearchStatistics {
    std::uint64_t evaluated = 0;
    std::uint64_t excluded_near_singular = 0;
    std::uint64_t negative_deficits = 0;
    double best_deficit = 0.0;
};

struct SearchResult {
    std::vector<SearchRecord> top;  // most negative deficits first
    SearchStatistics stats;
    bool found = false;  // any deficit below -1e-6
};

/// Threshold below which a deficit counts as a genuine violation rather
/// than quadrature/entropy numerical noise.
inline constexpr double kCounterexampleThreshold = -1e-6;

/// Randomized search for instances with negative recovery deficit. Sample
/// i is generated from the stream (seed, i), so the result is identical
/// for any thread count. threads = 0 picks hardware concurrency capped by
/// the GAUSS_PETZ_THREADS environment variable.
SearchResult search_counterexamples(std::uint64_t seed, std::uint64_t samples,
                                    int modes, int top_k = 10,
                                    int threads = 0);

/// Regenerates the (rho, sigma, channel) triple of one sample stream,
/// without evaluating it.
SearchRecord regenerate_instance(std::uint64_t seed, std::uint64_t index,
                                 int modes);

nlohmann::json to_json(const SearchRecord& record, std::uint64_t seed);
nlohmann::json search_result_to_json(const SearchResult& result,
                                     std::uint64_t seed,
                                     std::uint64_t samples, int modes);

}  // namespace gausspetz

#endif
