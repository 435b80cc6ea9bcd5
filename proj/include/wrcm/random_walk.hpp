#pragma once

#include <cstdint>
#include <vector>

#include "wrcm/sampler.hpp"

namespace wrcm {

struct WalkStats {
    std::uint64_t horizon = 0;
    std::uint32_t replicas = 0;
    std::uint32_t return_count = 0;
    // first_return_hist[t-1] counts walks whose first revisit happens at step t.
    std::vector<std::uint32_t> first_return_hist;
    double mean_range = 0.0;  // distinct vertices visited
    std::uint64_t min_range = 0;
    std::uint64_t max_range = 0;
};

// Simple random walk trajectory of length steps+1 starting at start.
std::vector<std::uint32_t> walk(const Graph& graph, std::uint32_t start,
                                std::uint64_t steps, std::uint64_t seed);

WalkStats walk_stats(const Graph& graph, std::uint32_t start, std::uint64_t horizon,
                     std::uint32_t replicas, std::uint64_t seed);

// Fraction of replicas whose walk revisits start within horizon steps.
double return_probability(const Graph& graph, std::uint32_t start,
                          std::uint64_t horizon, std::uint32_t replicas,
                          std::uint64_t seed);

}  // namespace wrcm
