#include <stdexcept>

#include <doctest.h>

#include "gausspetz/json_io.hpp"
#include "gausspetz/sampling.hpp"
#include "gausspetz/search.hpp"
#include "test_helpers.hpp"

using namespace gausspetz;
using gausspetz::testing::max_abs;
using gausspetz::testing::symplectic_defect;

TEST_SUITE("io_sampling") {

TEST_CASE("state and channel JSON round trip") {
    Rng rng(801);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 2;
        const GaussianState state = random_state(rng, n, 1.0, 3.0, 1.5);
        const GaussianState back = state_from_json(to_json(state));
        CHECK(max_abs(back.mean - state.mean) == 0.0);
        CHECK(max_abs(back.cov - state.cov) == 0.0);

        const GaussianChannel channel = random_cp_channel(rng, n);
        const GaussianChannel channel_back =
            channel_from_json(to_json(channel));
        CHECK(max_abs(channel_back.X - channel.X) == 0.0);
        CHECK(max_abs(channel_back.Y - channel.Y) == 0.0);
        CHECK(max_abs(channel_back.delta - channel.delta) == 0.0);
    }
}

TEST_CASE("JSON schema errors") {
    nlohmann::json bad_state{{"modes", 2},
                             {"mean", {0.0, 0.0}},
                             {"cov", {{1.0, 0.0}, {0.0, 1.0}}}};
    CHECK_THROWS_AS(state_from_json(bad_state), std::invalid_argument);

    nlohmann::json ragged{{"mean", {0.0, 0.0}},
                          {"cov", {{1.0, 0.0}, {0.0}}}};
    CHECK_THROWS_AS(state_from_json(ragged), std::invalid_argument);
}

TEST_CASE("deterministic streams") {
    Rng a = Rng::stream(42, 7);
    Rng b = Rng::stream(42, 7);
    for (int k = 0; k < 100; ++k) {
        CHECK(a.next() == b.next());
    }
    Rng c = Rng::stream(42, 8);
    CHECK(Rng::stream(42, 7).next() != c.next());

    Rng u(5);
    for (int k = 0; k < 1000; ++k) {
        const double value = u.uniform(-2.0, 2.0);
        CHECK(value >= -2.0);
        CHECK(value < 2.0);
    }
}

TEST_CASE("random symplectic matrices are symplectic") {
    Rng rng(802);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            CHECK(symplectic_defect(random_orthosymplectic(rng, n)) < 1e-12);
            CHECK(symplectic_defect(random_symplectic(rng, n)) < 1e-10);
        }
    }
}

TEST_CASE("search distribution produces valid instances") {
    Rng rng(803);
    for (int trial = 0; trial < 50; ++trial) {
        const GaussianState state = sample_search_state(rng, 1);
        CHECK(validate_state(state).is_faithful);
        const SampledChannel channel = sample_search_channel(rng, 1);
        CHECK(check_cp(channel.channel).is_cp);
        CHECK((channel.family == "loss" || channel.family == "amplifier" ||
               channel.family == "classical_noise"));
    }
}

TEST_CASE("search reproducibility and record schema") {
    const SearchResult first = search_counterexamples(7, 400, 1, 5);
    const SearchResult second = search_counterexamples(7, 400, 1, 5);
    const std::string dump_a =
        search_result_to_json(first, 7, 400, 1).dump();
    const std::string dump_b =
        search_result_to_json(second, 7, 400, 1).dump();
    CHECK(dump_a == dump_b);
    CHECK(first.stats.evaluated == 400);

    // Forced single-thread run must give the identical result.
    const SearchResult serial = search_counterexamples(7, 400, 1, 5, 1);
    CHECK(search_result_to_json(serial, 7, 400, 1).dump() == dump_a);

    const SearchResult empty = search_counterexamples(7, 0, 1, 5);
    CHECK(empty.top.empty());
    CHECK(!empty.found);

    if (!first.top.empty()) {
        const SearchRecord& best = first.top.front();
        const SearchRecord regen =
            regenerate_instance(7, best.sample_index, 1);
        CHECK(max_abs(regen.sigma.cov - best.sigma.cov) == 0.0);
        CHECK(max_abs(regen.rho.mean - best.rho.mean) == 0.0);
        CHECK(regen.channel.family == best.channel.family);

        const nlohmann::json record = to_json(best, 7);
        CHECK(record.contains("seed"));
        CHECK(record.at("instance").contains("rho"));
        CHECK(record.at("instance").at("channel").contains("family"));
    }
}

}  // TEST_SUITE
