#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "flowforge/parallel.hpp"

using namespace flowforge;

TEST_CASE("parallel_for visits every index exactly once") {
    for (int workers : {1, 2, 4, 8}) {
        std::vector<int> visits(1000, 0);
        std::atomic<int> total{0};
        parallel_for(visits.size(), workers, [&](std::size_t i) {
            ++visits[i];  // each index is claimed by exactly one worker
            total.fetch_add(1, std::memory_order_relaxed);
        });
        REQUIRE(total.load() == 1000);
        REQUIRE(std::all_of(visits.begin(), visits.end(), [](int v) { return v == 1; }));
    }
}

TEST_CASE("results indexed by item are worker-count independent") {
    auto run = [](int workers) {
        std::vector<std::uint64_t> out(512);
        parallel_for(out.size(), workers, [&](std::size_t i) {
            std::uint64_t h = i * 0x9E3779B97F4A7C15ULL;
            h ^= h >> 29;
            out[i] = h;
        });
        return out;
    };
    const auto serial = run(1);
    REQUIRE(run(2) == serial);
    REQUIRE(run(7) == serial);
}

TEST_CASE("parallel_for with zero items is a no-op") {
    bool touched = false;
    parallel_for(0, 4, [&](std::size_t) { touched = true; });
    REQUIRE_FALSE(touched);
}

TEST_CASE("parallel_for propagates the first thrown exception") {
    for (int workers : {1, 3}) {
        try {
            parallel_for(100, workers, [&](std::size_t i) {
                if (i == 42) throw numeric_error("item 42 failed");
            });
            FAIL("expected numeric_error");
        } catch (const numeric_error& e) {
            REQUIRE(std::string(e.what()) == "item 42 failed");
        }
    }
}

TEST_CASE("parallel_for keeps processing structure after an exception") {
    // Even when one item throws, the pool joins cleanly and later calls work.
    std::atomic<int> count{0};
    try {
        parallel_for(64, 4, [&](std::size_t i) {
            if (i == 10) throw error("boom");
            count.fetch_add(1, std::memory_order_relaxed);
        });
    } catch (const error&) {
    }
    parallel_for(8, 4, [&](std::size_t) { count.fetch_add(1, std::memory_order_relaxed); });
    REQUIRE(count.load() >= 8);
}

TEST_CASE("parallel_for validates the worker count") {
    REQUIRE_THROWS_AS(parallel_for(4, 0, [](std::size_t) {}), config_error);
    REQUIRE_THROWS_AS(parallel_for(4, -2, [](std::size_t) {}), config_error);
}
