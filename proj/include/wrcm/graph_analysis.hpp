#pragma once

#include <cstdint>
#include <vector>

#include "wrcm/sampler.hpp"

namespace wrcm {

// Axis-aligned box with the window's half-open convention [lo, hi).
struct Region {
    std::vector<double> lo;
    std::vector<double> hi;

    bool contains(const double* x, int d) const {
        for (int k = 0; k < d; ++k)
            if (!(x[k] >= lo[k] && x[k] < hi[k])) return false;
        return true;
    }
    static Region centered_box(double side, int d) {
        return Region{std::vector<double>(static_cast<std::size_t>(d), -0.5 * side),
                      std::vector<double>(static_cast<std::size_t>(d), 0.5 * side)};
    }
};

struct ComponentPartition {
    std::vector<std::uint32_t> component;  // id per vertex, ids dense from 0
    std::vector<std::uint64_t> sizes;      // per id
    std::uint32_t largest = 0;             // id of a largest component (smallest id wins ties)
};

struct TailEstimate {
    double tau_hat = 0.0;
    double stderr_ = 0.0;
    std::size_t tail_count = 0;
};

struct HillEstimate {
    double alpha_hat = 0.0;
    double stderr_ = 0.0;
    std::size_t tail_count = 0;
};

struct ClusterDensity {
    std::uint64_t largest_size = 0;
    double threshold = 0.0;
    bool meets_threshold = false;
};

ComponentPartition connected_components(const Graph& graph);

std::vector<std::uint32_t> degrees(const Graph& graph);

// Hill index over the top tail_fraction of arbitrary non-negative values,
// with a bootstrap standard error (200 resamples keyed on seed).
HillEstimate hill_tail_index(std::vector<double> values, double tail_fraction,
                             std::uint64_t seed);

// Degree power-law exponent tau_hat = 1 + alpha_hat of the Hill index of the
// degree sequence, bootstrap seeded from the sample.
TailEstimate degree_tail_exponent(const Graph& graph, double tail_fraction = 0.05);

// Largest connected cluster of the subgraph induced on [-M/2, M/2)^d and the
// indicator of it reaching size M^(lambda*d).
ClusterDensity local_cluster_density(const Graph& graph, double M, double lambda);

// Edges with exactly one endpoint inside the region.
std::uint64_t boundary_edge_count(const Graph& graph, const Region& region);

// Largest Euclidean distance from the region of a vertex joined by a single
// edge to a vertex inside it; 0 when no edge crosses the boundary.
double edge_reach(const Graph& graph, const Region& region);

}  // namespace wrcm
