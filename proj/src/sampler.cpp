#include "wrcm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wrcm/rng.hpp"

namespace wrcm {

namespace {

constexpr double kCapacity = 1e7;  // expected-point guard, desk-scale memory

// Smallest value u01 can produce; an envelope below this can never be accepted.
constexpr double kMinUniform = 0x1.0p-53;

}  // namespace

Graph make_graph(MarkedPointSet points, std::vector<Edge> edges) {
    const std::size_t n = points.size();
    for (const Edge& e : edges) {
        if (e.first >= e.second || e.second >= n)
            throw std::invalid_argument("Error: malformed edge list");
    }
    Graph g;
    g.points = std::move(points);
    g.edges = std::move(edges);
    std::sort(g.edges.begin(), g.edges.end());
    if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
        throw std::invalid_argument("Error: duplicate edge");
    g.adj_start.assign(n + 1, 0);
    for (const Edge& e : g.edges) {
        ++g.adj_start[e.first + 1];
        ++g.adj_start[e.second + 1];
    }
    for (std::size_t v = 0; v < n; ++v) g.adj_start[v + 1] += g.adj_start[v];
    g.adj.resize(2 * g.edges.size());
    std::vector<std::uint64_t> cursor(g.adj_start.begin(), g.adj_start.end() - 1);
    for (const Edge& e : g.edges) {
        g.adj[cursor[e.first]++] = e.second;
        g.adj[cursor[e.second]++] = e.first;
    }
    return g;
}

MarkedPointSet sample_points(const ModelParams& params, std::uint64_t seed) {
    validate(params);
    const double volume = std::pow(params.window.side, params.d);
    if (volume > kCapacity)
        throw std::runtime_error("Error: window volume exceeds sampler capacity");
    MarkedPointSet out;
    out.d = params.d;
    out.window = params.window;
    out.seed = seed;
    Stream count_stream(seed, tag::count);
    const std::uint64_t n = poisson(count_stream, volume);
    out.pos.resize(n * static_cast<std::size_t>(params.d));
    out.mark.resize(n);
    Stream pos_stream(seed, tag::position);
    const double side = params.window.side;
    for (double& x : out.pos) x = (pos_stream.next_u01() - 0.5) * side;
    Stream mark_stream(seed, tag::mark);
    for (double& m : out.mark) m = mark_stream.next_u01();
    return out;
}

MarkedPointSet add_palm_origin(MarkedPointSet points, std::uint64_t seed) {
    if (points.palm)
        throw std::runtime_error("Error: palm vertex already present");
    const int d = points.d;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool at_origin = true;
        for (int k = 0; k < d; ++k)
            if (points.pos[i * d + k] != 0.0) { at_origin = false; break; }
        if (at_origin)
            throw std::runtime_error("Error: a vertex already sits at the origin");
    }
    Stream palm_stream(seed, tag::palm);
    points.pos.insert(points.pos.end(), static_cast<std::size_t>(d), 0.0);
    points.mark.push_back(palm_stream.next_u01());
    points.palm = static_cast<std::uint32_t>(points.mark.size() - 1);
    return points;
}

namespace {

// Shared pair-variate machinery: U_{i,j} = u01(mix64(hkey[lo] ^ mixed[hi])),
// which expands to the same chain as pair_u01(seed, tag::edge, i, j).
struct PairStream {
    std::vector<std::uint64_t> hkey;   // chain(chain(seed,tag),i)
    std::vector<std::uint64_t> mixed;  // mix64(i)

    PairStream(std::uint64_t seed, std::size_t n) {
        const std::uint64_t base = chain(mix64(seed), tag::edge);
        hkey.resize(n);
        mixed.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            mixed[i] = mix64(i);
            hkey[i] = mix64(base ^ mixed[i]);
        }
    }
    double operator()(std::uint32_t lo, std::uint32_t hi) const {
        return u01(mix64(hkey[lo] ^ mixed[hi]));
    }
};

std::vector<Edge> edges_naive(const MarkedPointSet& pts, const ModelParams& p,
                              std::uint64_t seed) {
    const std::size_t n = pts.size();
    const ProfileConstants pc = profile_constants(p.profile, p.delta, p.d);
    PairStream pair(seed, n);
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double u = pair(i, j);
            const double dist =
                distance(pts.window, p.d, pts.position(i), pts.position(j));
            if (dist == 0.0)
                throw std::runtime_error("Error: coincident sample positions");
            if (u <= phi_at_distance(p, pc, pts.mark[i], pts.mark[j], dist))
                edges.emplace_back(i, j);
        }
    }
    return edges;
}

struct CellGrid {
    int m = 1;         // cells per axis
    double h = 1.0;    // cell side
    std::vector<std::uint32_t> order;  // vertex ids grouped by cell
    std::vector<std::uint32_t> start;  // cell -> range in order
    std::vector<double> min_mark;      // per cell, 1.0 when empty

    CellGrid(const MarkedPointSet& pts, int d) {
        const double side = pts.window.side;
        // Aim for about eight points per cell (unit intensity) so the number
        // of cell pairs stays far below the number of vertex pairs.
        const double target = std::max(1.0, std::pow(8.0, 1.0 / d));
        m = std::max(1, static_cast<int>(std::ceil(side / target)));
        h = side / m;
        std::size_t cells = 1;
        for (int k = 0; k < d; ++k) cells *= static_cast<std::size_t>(m);
        const std::size_t n = pts.size();
        std::vector<std::uint32_t> cell_of(n);
        std::vector<std::uint32_t> counts(cells, 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t c = 0;
            for (int k = 0; k < d; ++k) {
                int ck = static_cast<int>((pts.pos[i * d + k] + 0.5 * side) / h);
                ck = std::clamp(ck, 0, m - 1);
                c = c * m + static_cast<std::size_t>(ck);
            }
            cell_of[i] = static_cast<std::uint32_t>(c);
            ++counts[c];
        }
        start.assign(cells + 1, 0);
        for (std::size_t c = 0; c < cells; ++c) start[c + 1] = start[c] + counts[c];
        order.resize(n);
        std::vector<std::uint32_t> cursor(start.begin(), start.end() - 1);
        for (std::size_t i = 0; i < n; ++i)
            order[cursor[cell_of[i]]++] = static_cast<std::uint32_t>(i);
        min_mark.assign(cells, 1.0);
        for (std::size_t i = 0; i < n; ++i)
            min_mark[cell_of[i]] = std::min(min_mark[cell_of[i]], pts.mark[i]);
    }
};

std::vector<Edge> edges_cell(const MarkedPointSet& pts, const ModelParams& p,
                             std::uint64_t seed) {
    const std::size_t n = pts.size();
    const ProfileConstants pc = profile_constants(p.profile, p.delta, p.d);
    PairStream pair(seed, n);
    const int d = p.d;
    CellGrid grid(pts, d);
    const std::size_t cells = grid.min_mark.size();
    const bool torus = pts.window.geometry == Geometry::Torus;
    std::vector<int> ca(d), cb(d);
    std::vector<Edge> edges;

    const auto decode = [&](std::size_t c, std::vector<int>& out) {
        for (int k = d - 1; k >= 0; --k) {
            out[k] = static_cast<int>(c % grid.m);
            c /= grid.m;
        }
    };
    const auto test_pair = [&](std::uint32_t a, std::uint32_t b, double envelope) {
        const std::uint32_t lo = a < b ? a : b;
        const std::uint32_t hi = a < b ? b : a;
        const double u = pair(lo, hi);
        if (u > envelope) return;
        const double dist = distance(pts.window, d, pts.position(lo), pts.position(hi));
        if (dist == 0.0)
            throw std::runtime_error("Error: coincident sample positions");
        if (u <= phi_at_distance(p, pc, pts.mark[lo], pts.mark[hi], dist))
            edges.emplace_back(lo, hi);
    };

    for (std::size_t A = 0; A < cells; ++A) {
        const std::uint32_t a0 = grid.start[A], a1 = grid.start[A + 1];
        if (a0 == a1) continue;
        decode(A, ca);
        // within-cell pairs: envelope at distance 0 is the profile cap
        {
            const double env =
                phi_at_distance(p, pc, grid.min_mark[A], grid.min_mark[A], 0.0);
            if (env >= kMinUniform)
                for (std::uint32_t ia = a0; ia < a1; ++ia)
                    for (std::uint32_t ib = ia + 1; ib < a1; ++ib)
                        test_pair(grid.order[ia], grid.order[ib], env);
        }
        for (std::size_t B = A + 1; B < cells; ++B) {
            const std::uint32_t b0 = grid.start[B], b1 = grid.start[B + 1];
            if (b0 == b1) continue;
            decode(B, cb);
            double gap_sq = 0.0;
            for (int k = 0; k < d; ++k) {
                int dc = std::abs(ca[k] - cb[k]);
                if (torus) dc = std::min(dc, grid.m - dc);
                if (dc > 1) {
                    const double gap = (dc - 1) * grid.h;
                    gap_sq += gap * gap;
                }
            }
            const double env = phi_at_distance(p, pc, grid.min_mark[A],
                                               grid.min_mark[B], std::sqrt(gap_sq));
            if (env < kMinUniform) continue;  // no uniform variate is this small
            for (std::uint32_t ia = a0; ia < a1; ++ia)
                for (std::uint32_t ib = b0; ib < b1; ++ib)
                    test_pair(grid.order[ia], grid.order[ib], env);
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace

Graph sample_graph(const MarkedPointSet& points, const ModelParams& params,
                   SampleMethod method, std::uint64_t seed) {
    validate(params);
    if (points.size() == 0)
        throw std::invalid_argument("Error: cannot build a graph on zero points");
    if (points.d != params.d)
        throw std::invalid_argument("Error: point set dimension mismatch");
    std::vector<Edge> edges = method == SampleMethod::Naive
                                  ? edges_naive(points, params, seed)
                                  : edges_cell(points, params, seed);
    Graph graph = make_graph(points, std::move(edges));
    graph.params = params;
    return graph;
}

Graph thin_edges(const Graph& graph, double q, std::uint64_t seed) {
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("Error: retention probability must lie in [0,1]");
    std::vector<Edge> kept;
    kept.reserve(graph.edges.size());
    for (const Edge& e : graph.edges)
        if (pair_u01(seed, tag::thin, e.first, e.second) <= q) kept.push_back(e);
    Graph out = make_graph(graph.points, std::move(kept));
    out.params = graph.params;
    return out;
}

}  // namespace wrcm
