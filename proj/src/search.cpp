#include "gausspetz/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <thread>

#include "gausspetz/json_io.hpp"

namespace gausspetz {

namespace {

SearchRecord make_instance(std::uint64_t seed, std::uint64_t index, int modes) {
    Rng rng = Rng::stream(seed, index);
    GaussianState rho = sample_search_state(rng, modes);
    GaussianState sigma = sample_search_state(rng, modes);
    SampledChannel channel = sample_search_channel(rng, modes);
    return SearchRecord{index, std::move(rho), std::move(sigma),
                        std::move(channel), DeficitReport{}};
}

bool record_less(const SearchRecord& a, const SearchRecord& b) {
    if (a.report.deficit != b.report.deficit) {
        return a.report.deficit < b.report.deficit;
    }
    return a.sample_index < b.sample_index;
}

struct Shard {
    std::vector<SearchRecord> top;
    SearchStatistics stats;
};

Shard run_shard(std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
                int modes, std::size_t top_k) {
    Shard shard;
    shard.stats.best_deficit = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = begin; i < end; ++i) {
        SearchRecord record = make_instance(seed, i, modes);
        ++shard.stats.evaluated;
        try {
            record.report = recovery_deficit(record.rho, record.sigma,
                                             record.channel.channel);
        } catch (const std::exception&) {
            // Faithfulness failures at the sampled edges count as excluded.
            ++shard.stats.excluded_near_singular;
            continue;
        }
        if (record.report.near_singular) {
            ++shard.stats.excluded_near_singular;
            continue;
        }
        shard.stats.best_deficit =
            std::min(shard.stats.best_deficit, record.report.deficit);
        if (record.report.deficit < 0.0) {
            ++shard.stats.negative_deficits;
        }
        if (shard.top.size() < top_k ||
            record_less(record, shard.top.back())) {
            shard.top.push_back(std::move(record));
            std::sort(shard.top.begin(), shard.top.end(), record_less);
            if (shard.top.size() > top_k) shard.top.pop_back();
        }
    }
    return shard;
}

int resolve_threads(int requested) {
    int threads = requested;
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    if (const char* cap = std::getenv("GAUSS_PETZ_THREADS")) {
        const int parsed = std::atoi(cap);
        if (parsed > 0) threads = std::min(threads, parsed);
    }
    return std::max(1, threads);
}

}  // namespace

SearchRecord regenerate_instance(std::uint64_t seed, std::uint64_t index,
                                 int modes) {
    return make_instance(seed, index, modes);
}

SearchResult search_counterexamples(std::uint64_t seed, std::uint64_t samples,
                                    int modes, int top_k, int threads) {
    if (modes != 1 && modes != 2) {
        throw std::invalid_argument("search_counterexamples: modes must be 1 or 2");
    }
    const int workers =
        samples == 0 ? 1
                     : static_cast<int>(std::min<std::uint64_t>(
                           resolve_threads(threads), samples));
    std::vector<Shard> shards(workers);
    {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = workers == 0 ? 0 : samples / workers;
        std::uint64_t begin = 0;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t end =
                (w == workers - 1) ? samples : begin + chunk;
            pool.emplace_back([&shards, w, seed, begin, end, modes, top_k] {
                shards[w] = run_shard(seed, begin, end, modes,
                                      static_cast<std::size_t>(top_k));
            });
            begin = end;
        }
        for (std::thread& t : pool) t.join();
    }

    SearchResult result;
    result.stats.best_deficit = std::numeric_limits<double>::infinity();
    for (Shard& shard : shards) {
        result.stats.evaluated += shard.stats.evaluated;
        result.stats.excluded_near_singular +=
            shard.stats.excluded_near_singular;
        result.stats.negative_deficits += shard.stats.negative_deficits;
        result.stats.best_deficit =
            std::min(result.stats.best_deficit, shard.stats.best_deficit);
        for (SearchRecord& record : shard.top) {
            result.top.push_back(std::move(record));
        }
    }
    std::sort(result.top.begin(), result.top.end(), record_less);
    if (result.top.size() > static_cast<std::size_t>(top_k)) {
        result.top.erase(result.top.begin() + top_k, result.top.end());
    }
    if (result.stats.evaluated == result.stats.excluded_near_singular) {
        result.stats.best_deficit = 0.0;
    }
    result.found = !result.top.empty() &&
                   result.top.front().report.deficit < kCounterexampleThreshold;
    return result;
}

nlohmann::json to_json(const SearchRecord& record, std::uint64_t seed) {
    nlohmann::json instance{{"rho", to_json(record.rho)},
                            {"sigma", to_json(record.sigma)},
                            {"channel", to_json(record.channel.channel)}};
    instance["channel"]["family"] = record.channel.family;
    instance["channel"]["parameter"] = record.channel.parameter;
    return nlohmann::json{{"seed", seed},
                          {"sample_index", record.sample_index},
                          {"instance", std::move(instance)},
                          {"deficit", record.report.deficit},
                          {"report", to_json(record.report)},
                          {"flags",
                           nlohmann::json{{"near_singular",
                                           record.report.near_singular}}}};
}

nlohmann::json search_result_to_json(const SearchResult& result,
                                     std::uint64_t seed,
                                     std::uint64_t samples, int modes) {
    nlohmann::json records = nlohmann::json::array();
    for (const SearchRecord& record : result.top) {
        records.push_back(to_json(record, seed));
    }
    return nlohmann::json{
        {"seed", seed},
        {"samples", samples},
        {"modes", modes},
        {"found_counterexample", result.found},
        {"threshold", kCounterexampleThreshold},
        {"records", std::move(records)},
        {"statistics",
         nlohmann::json{
             {"evaluated", result.stats.evaluated},
             {"excluded_near_singular", result.stats.excluded_near_singular},
             {"negative_deficits", result.stats.negative_deficits},
             {"best_deficit", result.stats.best_deficit}}}};
}

}  // namespace gausspetz
