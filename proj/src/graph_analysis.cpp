#include "wrcm/graph_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wrcm/rng.hpp"

namespace wrcm {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> rank_;

    explicit UnionFind(std::size_t n) : parent(n), rank_(n, 0) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }
};

double hill_alpha(const std::vector<double>& sorted_desc, std::size_t k) {
    // sorted_desc in non-increasing order; the k largest values against the
    // (k+1)-th as threshold.
    const double ref = sorted_desc[k];
    if (!(ref > 0.0)) throw std::runtime_error("Error: value tail is not positive");
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += std::log(sorted_desc[i] / ref);
    if (!(acc > 0.0))
        throw std::runtime_error("Error: degenerate tail, exponent undefined");
    return static_cast<double>(k) / acc;
}

}  // namespace

ComponentPartition connected_components(const Graph& graph) {
    const std::size_t n = graph.size();
    UnionFind uf(n);
    for (const Edge& e : graph.edges) uf.unite(e.first, e.second);
    ComponentPartition part;
    part.component.assign(n, 0);
    constexpr std::uint32_t unset = 0xffffffffu;
    std::vector<std::uint32_t> label(n, unset);
    std::uint32_t next = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t root = uf.find(v);
        if (label[root] == unset) {
            label[root] = next++;
            part.sizes.push_back(0);
        }
        part.component[v] = label[root];
        ++part.sizes[label[root]];
    }
    part.largest = 0;
    for (std::uint32_t id = 1; id < part.sizes.size(); ++id)
        if (part.sizes[id] > part.sizes[part.largest]) part.largest = id;
    return part;
}

std::vector<std::uint32_t> degrees(const Graph& graph) {
    std::vector<std::uint32_t> deg(graph.size());
    for (std::size_t v = 0; v < graph.size(); ++v)
        deg[v] = static_cast<std::uint32_t>(graph.degree(v));
    return deg;
}

HillEstimate hill_tail_index(std::vector<double> values, double tail_fraction,
                             std::uint64_t seed) {
    const std::size_t n = values.size();
    if (n < 10)
        throw std::invalid_argument("Error: need at least 10 values for a tail fit");
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
        throw std::invalid_argument("Error: tail fraction must lie in (0,1)");
    for (double x : values)
        if (!(x >= 0.0))
            throw std::invalid_argument("Error: values must be non-negative");
    const std::size_t k =
        std::max<std::size_t>(1, static_cast<std::size_t>(tail_fraction * n));
    if (k + 1 >= n) throw std::invalid_argument("Error: tail fraction too large");

    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    HillEstimate est;
    est.tail_count = k;
    est.alpha_hat = hill_alpha(sorted, k);

    Stream boot(chain(mix64(seed), tag::bootstrap));
    constexpr int resamples = 200;
    std::vector<double> alphas;
    alphas.reserve(resamples);
    std::vector<double> sample(n);
    for (int r = 0; r < resamples; ++r) {
        for (std::size_t i = 0; i < n; ++i) sample[i] = values[boot.next_index(n)];
        std::sort(sample.begin(), sample.end(), std::greater<>());
        try {
            alphas.push_back(hill_alpha(sample, k));
        } catch (const std::runtime_error&) {
            // a degenerate resample carries no information; skip it
        }
    }
    if (alphas.size() >= 2) {
        const double mean =
            std::accumulate(alphas.begin(), alphas.end(), 0.0) / alphas.size();
        double ss = 0.0;
        for (double a : alphas) ss += (a - mean) * (a - mean);
        est.stderr_ = std::sqrt(ss / (alphas.size() - 1));
    }
    return est;
}

TailEstimate degree_tail_exponent(const Graph& graph, double tail_fraction) {
    const std::size_t n = graph.size();
    if (n < 1000)
        throw std::invalid_argument("Error: need at least 1000 vertices for a tail fit");
    std::vector<double> deg;
    deg.reserve(n);
    for (std::size_t v = 0; v < n; ++v) deg.push_back(graph.degree(v));
    const HillEstimate hill =
        hill_tail_index(std::move(deg), tail_fraction, graph.points.seed);
    return TailEstimate{1.0 + hill.alpha_hat, hill.stderr_, hill.tail_count};
}

ClusterDensity local_cluster_density(const Graph& graph, double M, double lambda) {
    const int d = graph.points.d;
    if (!(M > 0.0) || M > graph.points.window.side)
        throw std::invalid_argument("Error: sub-box must fit inside the window");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("Error: lambda must lie in (0,1)");
    const Region box = Region::centered_box(M, d);
    const std::size_t n = graph.size();
    std::vector<char> inside(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        inside[v] = box.contains(graph.points.position(v), d) ? 1 : 0;
    UnionFind uf(n);
    for (const Edge& e : graph.edges)
        if (inside[e.first] && inside[e.second]) uf.unite(e.first, e.second);
    std::vector<std::uint64_t> size_of(n, 0);
    ClusterDensity out;
    out.threshold = std::pow(M, lambda * d);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!inside[v]) continue;
        const std::uint64_t s = ++size_of[uf.find(v)];
        out.largest_size = std::max(out.largest_size, s);
    }
    out.meets_threshold =
        static_cast<double>(out.largest_size) >= out.threshold;
    return out;
}

std::uint64_t boundary_edge_count(const Graph& graph, const Region& region) {
    const int d = graph.points.d;
    if (static_cast<int>(region.lo.size()) != d ||
        static_cast<int>(region.hi.size()) != d)
        throw std::invalid_argument("Error: region dimension mismatch");
    std::uint64_t count = 0;
    for (const Edge& e : graph.edges) {
        const bool a = region.contains(graph.points.position(e.first), d);
        const bool b = region.contains(graph.points.position(e.second), d);
        if (a != b) ++count;
    }
    return count;
}

double edge_reach(const Graph& graph, const Region& region) {
    const int d = graph.points.d;
    if (static_cast<int>(region.lo.size()) != d ||
        static_cast<int>(region.hi.size()) != d)
        throw std::invalid_argument("Error: region dimension mismatch");
    const auto dist_to_box = [&](const double* x) {
        double sq = 0.0;
        for (int k = 0; k < d; ++k) {
            double gap = 0.0;
            if (x[k] < region.lo[k]) gap = region.lo[k] - x[k];
            else if (x[k] > region.hi[k]) gap = x[k] - region.hi[k];
            sq += gap * gap;
        }
        return std::sqrt(sq);
    };
    double reach = 0.0;
    for (const Edge& e : graph.edges) {
        const bool a = region.contains(graph.points.position(e.first), d);
        const bool b = region.contains(graph.points.position(e.second), d);
        if (a == b) continue;
        const double* outside = graph.points.position(a ? e.second : e.first);
        reach = std::max(reach, dist_to_box(outside));
    }
    return reach;
}

}  // namespace wrcm
