#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wrcm/model.hpp"

namespace wrcm {

// Marked Poisson sample inside a window. Positions are stored flat, row-major
// (size() * d doubles), marks one per vertex.
struct MarkedPointSet {
    int d = 2;
    Window window{};
    std::vector<double> pos;
    std::vector<double> mark;
    std::optional<std::uint32_t> palm;
    std::uint64_t seed = 0;

    std::size_t size() const { return mark.size(); }
    const double* position(std::size_t i) const { return pos.data() + i * d; }
    MarkedVertex vertex(std::size_t i) const {
        return MarkedVertex{{pos.begin() + static_cast<std::ptrdiff_t>(i * d),
                             pos.begin() + static_cast<std::ptrdiff_t>((i + 1) * d)},
                            mark[i]};
    }
};

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Immutable graph over a point set; edges sorted with i < j, adjacency in CSR
// form with each neighbour list ascending. params records the model the edges
// were drawn from (defaulted for hand-built graphs).
struct Graph {
    MarkedPointSet points;
    ModelParams params{};
    std::vector<Edge> edges;
    std::vector<std::uint64_t> adj_start;  // size() + 1 offsets
    std::vector<std::uint32_t> adj;

    std::size_t size() const { return points.size(); }
    std::size_t degree(std::size_t v) const { return adj_start[v + 1] - adj_start[v]; }
    const std::uint32_t* neighbors(std::size_t v) const { return adj.data() + adj_start[v]; }
};

enum class SampleMethod { Naive, Cell };

// Assembles the CSR structure; edges must be i < j and free of duplicates.
Graph make_graph(MarkedPointSet points, std::vector<Edge> edges);

// Poisson(volume) many points, uniform positions and marks, all keyed on seed.
MarkedPointSet sample_points(const ModelParams& params, std::uint64_t seed);

// Adds the distinguished vertex at the origin with a fresh uniform mark.
MarkedPointSet add_palm_origin(MarkedPointSet points, std::uint64_t seed);

// Edge {i,j} present iff U_{i,j} <= phi(x_i, x_j). Naive tests every pair;
// Cell prunes with per-cell-pair envelopes but yields the identical edge set.
Graph sample_graph(const MarkedPointSet& points, const ModelParams& params,
                   SampleMethod method, std::uint64_t seed);

// Keeps each edge independently with probability q; vertices unchanged.
Graph thin_edges(const Graph& graph, double q, std::uint64_t seed);

}  // namespace wrcm
