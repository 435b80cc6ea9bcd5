#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wrcm/sampler.hpp"

namespace wrcm {

struct CEdge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    double c = 1.0;
};

// Finite network with strictly positive conductances; parallel edges allowed,
// self-loops forbidden. coords optionally embeds vertices in Z^2 (set by
// project_to_lattice, empty otherwise).
struct ElectricalNetwork {
    std::uint32_t n = 0;
    std::vector<CEdge> edges;
    std::vector<std::array<int, 2>> coords;
};

void validate(const ElectricalNetwork& net);

// Unit potential at source, zero on the sinks; returns the current leaving the
// source. 0 when no sink is reachable. Conjugate gradients with Jacobi
// preconditioning on the reduced Laplacian; throws on non-convergence.
double effective_conductance(const ElectricalNetwork& net, std::uint32_t source,
                             const std::vector<std::uint32_t>& sinks,
                             double rel_tol = 1e-10);

// (sum_n C_Pi_n^{-1})^{-1} over pairwise disjoint separating cutsets, each a
// list of edge indices. An upper bound for the conductance from source to the
// vertices separated by every cutset.
double nash_williams_bound(const ElectricalNetwork& net, std::uint32_t source,
                           const std::vector<std::vector<std::uint32_t>>& cutsets);

// Edge-index cutsets crossing the L-infinity shells at radii (r0*2^k) around
// center, for networks with coords; companion to nash_williams_bound.
std::vector<std::vector<std::uint32_t>> annular_cutsets(
    const ElectricalNetwork& net, std::array<int, 2> center, int r0, int shells);

// Merges each group into a single vertex; intra-group edges vanish as
// self-loops, parallel edges stay. Remaining vertices keep their relative
// order; a group lands at its smallest member's slot.
ElectricalNetwork collapse(const ElectricalNetwork& net,
                           const std::vector<std::vector<std::uint32_t>>& groups);

// Parallel merge + interior degree-2 elimination to a fixed point, preserving
// all effective conductances between the surviving vertices. Vertices listed
// in keep are never eliminated.
ElectricalNetwork reduce_series_parallel(const ElectricalNetwork& net,
                                         const std::vector<std::uint32_t>& keep = {});

// Maps the old vertex ids of a reduced/collapsed network to the new ids;
// helper emitted alongside the transforms above.
struct VertexMap {
    std::vector<std::uint32_t> to_new;  // old id -> new id (or kRemoved)
    static constexpr std::uint32_t kRemoved = 0xffffffffu;
};

ElectricalNetwork collapse_mapped(const ElectricalNetwork& net,
                                  const std::vector<std::vector<std::uint32_t>>& groups,
                                  VertexMap& map_out);
ElectricalNetwork reduce_series_parallel_mapped(const ElectricalNetwork& net,
                                                const std::vector<std::uint32_t>& keep,
                                                VertexMap& map_out);

// The unit-cell projection of a planar geometric graph onto a nearest-
// neighbour network on Z^2: same-cell vertices glued, every edge contributes
// conductance along the vertical-first L-path between its endpoint cells.
ElectricalNetwork project_to_lattice(const Graph& graph);

struct SurvivalTable {
    double c1 = 1.0;
    std::uint64_t pool = 0;
    std::vector<std::uint32_t> n;
    std::vector<double> survival;      // empirical P(C_e > c1 * n)
    std::vector<char> violates;        // survival above 1/n beyond 4 sigma
    bool any_violation = false;
};

// Pooled survival of bond conductances against the 1/n envelope.
SurvivalTable conductance_tail(const ElectricalNetwork& net, double c1,
                               std::uint32_t n_max);

}  // namespace wrcm
