#include "wrcm/random_walk.hpp"

#include <algorithm>
#include <stdexcept>

#include "wrcm/rng.hpp"

namespace wrcm {

namespace {

void check_start(const Graph& graph, std::uint32_t start) {
    if (start >= graph.size())
        throw std::invalid_argument("Error: start vertex out of range");
    if (graph.degree(start) == 0)
        throw std::runtime_error("Error: walk started on an isolated vertex");
}

}  // namespace

std::vector<std::uint32_t> walk(const Graph& graph, std::uint32_t start,
                                std::uint64_t steps, std::uint64_t seed) {
    check_start(graph, start);
    Stream stream(seed, tag::walk);
    std::vector<std::uint32_t> path;
    path.reserve(steps + 1);
    path.push_back(start);
    std::uint32_t cur = start;
    for (std::uint64_t t = 0; t < steps; ++t) {
        cur = graph.neighbors(cur)[stream.next_index(graph.degree(cur))];
        path.push_back(cur);
    }
    return path;
}

WalkStats walk_stats(const Graph& graph, std::uint32_t start, std::uint64_t horizon,
                     std::uint32_t replicas, std::uint64_t seed) {
    check_start(graph, start);
    if (horizon < 1) throw std::invalid_argument("Error: horizon must be positive");
    if (replicas < 1) throw std::invalid_argument("Error: need at least one replica");
    WalkStats stats;
    stats.horizon = horizon;
    stats.replicas = replicas;
    stats.first_return_hist.assign(horizon, 0);
    // visit stamps avoid clearing an n-sized buffer per replica
    std::vector<std::uint32_t> stamp(graph.size(), 0xffffffffu);
    const std::uint64_t base = chain(mix64(seed), tag::replica);
    double range_sum = 0.0;
    for (std::uint32_t r = 0; r < replicas; ++r) {
        Stream stream(chain(base, r), tag::walk);
        std::uint32_t cur = start;
        std::uint64_t range = 1;
        stamp[start] = r;
        bool returned = false;
        for (std::uint64_t t = 1; t <= horizon; ++t) {
            cur = graph.neighbors(cur)[stream.next_index(graph.degree(cur))];
            if (stamp[cur] != r) {
                stamp[cur] = r;
                ++range;
            }
            if (cur == start && !returned) {
                returned = true;
                ++stats.return_count;
                ++stats.first_return_hist[t - 1];
            }
        }
        range_sum += range;
        stats.min_range = r == 0 ? range : std::min(stats.min_range, range);
        stats.max_range = std::max(stats.max_range, range);
    }
    stats.mean_range = range_sum / replicas;
    return stats;
}

double return_probability(const Graph& graph, std::uint32_t start,
                          std::uint64_t horizon, std::uint32_t replicas,
                          std::uint64_t seed) {
    const WalkStats stats = walk_stats(graph, start, horizon, replicas, seed);
    return static_cast<double>(stats.return_count) / replicas;
}

}  // namespace wrcm
