#include "wrcm/electrical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace wrcm {

namespace {

struct Adjacency {
    std::vector<std::uint32_t> start;  // n+1 offsets
    std::vector<std::uint32_t> other;
    std::vector<std::uint32_t> edge;

    explicit Adjacency(const ElectricalNetwork& net) {
        start.assign(net.n + 1, 0);
        for (const CEdge& e : net.edges) {
            ++start[e.u + 1];
            ++start[e.v + 1];
        }
        for (std::uint32_t v = 0; v < net.n; ++v) start[v + 1] += start[v];
        other.resize(start[net.n]);
        edge.resize(start[net.n]);
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        for (std::uint32_t i = 0; i < net.edges.size(); ++i) {
            const CEdge& e = net.edges[i];
            other[fill[e.u]] = e.v;
            edge[fill[e.u]++] = i;
            other[fill[e.v]] = e.u;
            edge[fill[e.v]++] = i;
        }
    }
};

std::vector<char> reachable_from(const ElectricalNetwork& net, const Adjacency& adj,
                                 std::uint32_t source,
                                 const std::vector<char>* skip_edge = nullptr) {
    std::vector<char> seen(net.n, 0);
    std::vector<std::uint32_t> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t k = adj.start[v]; k < adj.start[v + 1]; ++k) {
            if (skip_edge && (*skip_edge)[adj.edge[k]]) continue;
            const std::uint32_t w = adj.other[k];
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace

void validate(const ElectricalNetwork& net) {
    for (const CEdge& e : net.edges) {
        if (e.u >= net.n || e.v >= net.n)
            throw std::invalid_argument("Error: edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("Error: self-loops are not allowed");
        if (!(e.c > 0.0))
            throw std::invalid_argument("Error: conductances must be positive");
    }
    if (!net.coords.empty() && net.coords.size() != net.n)
        throw std::invalid_argument("Error: coords must be empty or one per vertex");
}

double effective_conductance(const ElectricalNetwork& net, std::uint32_t source,
                             const std::vector<std::uint32_t>& sinks, double rel_tol) {
    validate(net);
    if (source >= net.n) throw std::invalid_argument("Error: source out of range");
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("Error: tolerance must be positive");
    std::vector<char> is_sink(net.n, 0);
    for (std::uint32_t s : sinks) {
        if (s >= net.n) throw std::invalid_argument("Error: sink out of range");
        if (s == source)
            throw std::invalid_argument("Error: source must not be a sink");
        is_sink[s] = 1;
    }

    const Adjacency adj(net);
    const std::vector<char> reach = reachable_from(net, adj, source);
    bool sink_reachable = false;
    for (std::uint32_t v = 0; v < net.n; ++v)
        if (reach[v] && is_sink[v]) sink_reachable = true;
    if (!sink_reachable) return 0.0;

    // unknowns: reachable vertices that are neither the source nor a sink
    constexpr std::uint32_t kNone = 0xffffffffu;
    std::vector<std::uint32_t> idx(net.n, kNone);
    std::uint32_t m = 0;
    for (std::uint32_t v = 0; v < net.n; ++v)
        if (reach[v] && !is_sink[v] && v != source) idx[v] = m++;

    std::vector<double> diag(m, 0.0), b(m, 0.0);
    struct OffDiag {
        std::uint32_t i, j;
        double c;
    };
    std::vector<OffDiag> off;
    for (const CEdge& e : net.edges) {
        if (!reach[e.u]) continue;  // reachability is closed over edges
        const std::uint32_t iu = idx[e.u], iv = idx[e.v];
        if (iu != kNone) {
            diag[iu] += e.c;
            if (e.v == source) b[iu] += e.c;
        }
        if (iv != kNone) {
            diag[iv] += e.c;
            if (e.u == source) b[iv] += e.c;
        }
        if (iu != kNone && iv != kNone) off.push_back({iu, iv, e.c});
    }

    std::vector<double> v_pot(m, 0.0);
    if (m > 0) {
        // preconditioned conjugate gradients on the reduced Laplacian
        std::vector<double> r = b, z(m), p(m), ap(m);
        double bnorm = 0.0;
        for (double x : b) bnorm += x * x;
        bnorm = std::sqrt(bnorm);
        if (bnorm > 0.0) {
            const double tol = rel_tol * bnorm;
            for (std::uint32_t i = 0; i < m; ++i) z[i] = r[i] / diag[i];
            p = z;
            double rz = 0.0;
            for (std::uint32_t i = 0; i < m; ++i) rz += r[i] * z[i];
            bool done = false;
            for (std::uint64_t it = 0; it < 1000000 && !done; ++it) {
                for (std::uint32_t i = 0; i < m; ++i) ap[i] = diag[i] * p[i];
                for (const OffDiag& o : off) {
                    ap[o.i] -= o.c * p[o.j];
                    ap[o.j] -= o.c * p[o.i];
                }
                double pap = 0.0;
                for (std::uint32_t i = 0; i < m; ++i) pap += p[i] * ap[i];
                if (!(pap > 0.0))
                    throw std::runtime_error("Error: conductance solve broke down");
                const double alpha = rz / pap;
                double rnorm = 0.0;
                for (std::uint32_t i = 0; i < m; ++i) {
                    v_pot[i] += alpha * p[i];
                    r[i] -= alpha * ap[i];
                    rnorm += r[i] * r[i];
                }
                if (std::sqrt(rnorm) <= tol) {
                    done = true;
                    break;
                }
                double rz_new = 0.0;
                for (std::uint32_t i = 0; i < m; ++i) {
                    z[i] = r[i] / diag[i];
                    rz_new += r[i] * z[i];
                }
                const double beta = rz_new / rz;
                rz = rz_new;
                for (std::uint32_t i = 0; i < m; ++i) p[i] = z[i] + beta * p[i];
            }
            if (!done)
                throw std::runtime_error(
                    "Error: conductance solve failed to converge");
        }
    }

    double c_eff = 0.0;
    for (const CEdge& e : net.edges) {
        if (e.u != source && e.v != source) continue;
        const std::uint32_t w = e.u == source ? e.v : e.u;
        const double vw = is_sink[w] ? 0.0 : v_pot[idx[w]];
        c_eff += e.c * (1.0 - vw);
    }
    return c_eff;
}

double nash_williams_bound(const ElectricalNetwork& net, std::uint32_t source,
                           const std::vector<std::vector<std::uint32_t>>& cutsets) {
    validate(net);
    if (source >= net.n) throw std::invalid_argument("Error: source out of range");
    if (cutsets.empty())
        throw std::invalid_argument("Error: need at least one cutset");
    std::vector<char> used(net.edges.size(), 0);
    for (const auto& cs : cutsets) {
        if (cs.empty()) throw std::invalid_argument("Error: empty cutset");
        for (std::uint32_t e : cs) {
            if (e >= net.edges.size())
                throw std::invalid_argument("Error: cutset edge index out of range");
            if (used[e])
                throw std::invalid_argument("Error: cutsets must be disjoint");
            used[e] = 1;
        }
    }

    const Adjacency adj(net);
    const std::vector<char> full = reachable_from(net, adj, source);
    std::vector<char> joint(full);  // ends as: reachable and outside every R_i
    joint[source] = 0;
    double inv_sum = 0.0;
    std::vector<char> skip(net.edges.size(), 0);
    for (const auto& cs : cutsets) {
        std::fill(skip.begin(), skip.end(), 0);
        for (std::uint32_t e : cs) skip[e] = 1;
        const std::vector<char> part = reachable_from(net, adj, source, &skip);
        bool separates = false;
        for (std::uint32_t v = 0; v < net.n; ++v) {
            if (part[v]) joint[v] = 0;
            if (full[v] && !part[v]) separates = true;
        }
        if (!separates)
            throw std::invalid_argument("Error: cutset does not separate the source");
        double cap = 0.0;
        for (std::uint32_t e : cs) cap += net.edges[e].c;
        inv_sum += 1.0 / cap;
    }
    if (std::find(joint.begin(), joint.end(), 1) == joint.end())
        throw std::invalid_argument(
            "Error: cutsets do not jointly separate any vertex");
    return 1.0 / inv_sum;
}

std::vector<std::vector<std::uint32_t>> annular_cutsets(const ElectricalNetwork& net,
                                                        std::array<int, 2> center,
                                                        int r0, int shells) {
    validate(net);
    if (net.coords.size() != net.n)
        throw std::invalid_argument("Error: network carries no coordinates");
    if (r0 < 1) throw std::invalid_argument("Error: base radius must be positive");
    if (shells < 1 || shells > 30)
        throw std::invalid_argument("Error: shell count out of range");
    const auto inside = [&](std::uint32_t v, long radius) {
        const long dx = std::labs(static_cast<long>(net.coords[v][0]) - center[0]);
        const long dy = std::labs(static_cast<long>(net.coords[v][1]) - center[1]);
        return std::max(dx, dy) <= radius;
    };
    std::vector<std::vector<std::uint32_t>> out;
    for (int k = 0; k < shells; ++k) {
        const long radius = static_cast<long>(r0) << k;
        std::vector<std::uint32_t> cs;
        for (std::uint32_t e = 0; e < net.edges.size(); ++e)
            if (inside(net.edges[e].u, radius) != inside(net.edges[e].v, radius))
                cs.push_back(e);
        if (!cs.empty()) out.push_back(std::move(cs));
    }
    return out;
}

ElectricalNetwork collapse_mapped(const ElectricalNetwork& net,
                                  const std::vector<std::vector<std::uint32_t>>& groups,
                                  VertexMap& map_out) {
    validate(net);
    std::vector<std::uint32_t> slot(net.n);
    for (std::uint32_t v = 0; v < net.n; ++v) slot[v] = v;
    std::vector<char> member(net.n, 0);
    for (const auto& g : groups) {
        if (g.empty()) throw std::invalid_argument("Error: empty group");
        std::uint32_t rep = g[0];
        for (std::uint32_t v : g) {
            if (v >= net.n)
                throw std::invalid_argument("Error: group member out of range");
            if (member[v])
                throw std::invalid_argument("Error: groups must be disjoint");
            member[v] = 1;
            rep = std::min(rep, v);
        }
        for (std::uint32_t v : g) slot[v] = rep;
    }

    ElectricalNetwork out;
    map_out.to_new.assign(net.n, VertexMap::kRemoved);
    std::vector<std::uint32_t> id(net.n, VertexMap::kRemoved);
    for (std::uint32_t v = 0; v < net.n; ++v)
        if (slot[v] == v) {
            id[v] = out.n++;
            if (!net.coords.empty()) out.coords.push_back(net.coords[v]);
        }
    for (std::uint32_t v = 0; v < net.n; ++v) map_out.to_new[v] = id[slot[v]];
    for (const CEdge& e : net.edges) {
        const std::uint32_t u = map_out.to_new[e.u], v = map_out.to_new[e.v];
        if (u == v) continue;  // intra-group edge becomes a self-loop
        out.edges.push_back({std::min(u, v), std::max(u, v), e.c});
    }
    return out;
}

ElectricalNetwork collapse(const ElectricalNetwork& net,
                           const std::vector<std::vector<std::uint32_t>>& groups) {
    VertexMap map;
    return collapse_mapped(net, groups, map);
}

ElectricalNetwork reduce_series_parallel_mapped(const ElectricalNetwork& net,
                                                const std::vector<std::uint32_t>& keep,
                                                VertexMap& map_out) {
    validate(net);
    std::vector<char> kept(net.n, 0);
    for (std::uint32_t v : keep) {
        if (v >= net.n) throw std::invalid_argument("Error: keep vertex out of range");
        kept[v] = 1;
    }

    // normalized live edge list; c == 0 marks a tombstone
    struct E {
        std::uint32_t u, v;
        double c;
    };
    std::vector<E> edges;
    edges.reserve(net.edges.size());
    for (const CEdge& e : net.edges)
        edges.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.c});
    std::sort(edges.begin(), edges.end(), [](const E& a, const E& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    // initial parallel merge
    std::size_t w = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (w > 0 && edges[w - 1].u == edges[i].u && edges[w - 1].v == edges[i].v)
            edges[w - 1].c += edges[i].c;
        else
            edges[w++] = edges[i];
    }
    edges.resize(w);

    std::vector<std::vector<std::uint32_t>> incident(net.n);
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
        incident[edges[i].u].push_back(i);
        incident[edges[i].v].push_back(i);
    }
    const auto detach = [&](std::uint32_t v, std::uint32_t e) {
        auto& list = incident[v];
        list.erase(std::find(list.begin(), list.end(), e));
    };

    std::vector<char> alive(net.n, 1);
    for (;;) {
        std::uint32_t victim = net.n;
        for (std::uint32_t v = 0; v < net.n; ++v)
            if (alive[v] && !kept[v] && incident[v].size() == 2) {
                victim = v;
                break;
            }
        if (victim == net.n) break;
        const std::uint32_t e1 = incident[victim][0], e2 = incident[victim][1];
        const std::uint32_t a = edges[e1].u == victim ? edges[e1].v : edges[e1].u;
        const std::uint32_t b = edges[e2].u == victim ? edges[e2].v : edges[e2].u;
        const double c = 1.0 / (1.0 / edges[e1].c + 1.0 / edges[e2].c);
        detach(a, e1);
        detach(b, e2);
        edges[e1].c = edges[e2].c = 0.0;
        incident[victim].clear();
        alive[victim] = 0;
        // fold into an existing a-b edge if there is one, else reuse slot e1
        std::uint32_t existing = static_cast<std::uint32_t>(edges.size());
        for (std::uint32_t e : incident[a]) {
            const std::uint32_t other = edges[e].u == a ? edges[e].v : edges[e].u;
            if (other == b) {
                existing = e;
                break;
            }
        }
        if (existing < edges.size()) {
            edges[existing].c += c;
        } else {
            edges[e1] = {std::min(a, b), std::max(a, b), c};
            incident[a].push_back(e1);
            incident[b].push_back(e1);
        }
    }

    ElectricalNetwork out;
    map_out.to_new.assign(net.n, VertexMap::kRemoved);
    for (std::uint32_t v = 0; v < net.n; ++v)
        if (alive[v]) {
            map_out.to_new[v] = out.n++;
            if (!net.coords.empty()) out.coords.push_back(net.coords[v]);
        }
    for (const E& e : edges)
        if (e.c > 0.0)
            out.edges.push_back({map_out.to_new[e.u], map_out.to_new[e.v], e.c});
    std::sort(out.edges.begin(), out.edges.end(), [](const CEdge& a, const CEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return out;
}

ElectricalNetwork reduce_series_parallel(const ElectricalNetwork& net,
                                         const std::vector<std::uint32_t>& keep) {
    VertexMap map;
    return reduce_series_parallel_mapped(net, keep, map);
}

ElectricalNetwork project_to_lattice(const Graph& graph) {
    if (graph.points.d != 2)
        throw std::invalid_argument("Error: lattice projection needs d = 2");
    const auto cell_of = [&](std::uint32_t v) {
        const double* p = graph.points.position(v);
        return std::array<int, 2>{static_cast<int>(std::floor(p[0])),
                                  static_cast<int>(std::floor(p[1]))};
    };

    // accumulate multiplicity per cell pair; same-cell edges vanish when the
    // cell is glued to a single network vertex
    std::map<std::array<int, 4>, double> cell_edges;
    for (const Edge& e : graph.edges) {
        std::array<int, 2> a = cell_of(e.first), b = cell_of(e.second);
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        cell_edges[{a[0], a[1], b[0], b[1]}] += 1.0;
    }

    std::set<std::array<int, 2>> cells;
    for (std::uint32_t v = 0; v < graph.size(); ++v) cells.insert(cell_of(v));

    // every cell edge spreads c_e * L1-length over the nearest-neighbour bonds
    // of the vertical-first L-path between its endpoints
    std::map<std::array<int, 4>, double> bonds;
    const auto add_bond = [&](std::array<int, 2> a, std::array<int, 2> b, double c) {
        if (b < a) std::swap(a, b);
        bonds[{a[0], a[1], b[0], b[1]}] += c;
        cells.insert(a);
        cells.insert(b);
    };
    for (const auto& [key, c_e] : cell_edges) {
        const std::array<int, 2> from{key[0], key[1]}, to{key[2], key[3]};
        const int len = std::abs(to[0] - from[0]) + std::abs(to[1] - from[1]);
        const double add = len == 1 ? c_e : c_e * len;
        std::array<int, 2> cur = from;
        while (cur[1] != to[1]) {
            const std::array<int, 2> next{cur[0], cur[1] + (to[1] > cur[1] ? 1 : -1)};
            add_bond(cur, next, add);
            cur = next;
        }
        while (cur[0] != to[0]) {
            const std::array<int, 2> next{cur[0] + (to[0] > cur[0] ? 1 : -1), cur[1]};
            add_bond(cur, next, add);
            cur = next;
        }
    }

    ElectricalNetwork out;
    std::map<std::array<int, 2>, std::uint32_t> id;
    for (const auto& cell : cells) {
        id[cell] = out.n++;
        out.coords.push_back(cell);
    }
    for (const auto& [key, c] : bonds)
        out.edges.push_back({id[{key[0], key[1]}], id[{key[2], key[3]}], c});
    return out;
}

SurvivalTable conductance_tail(const ElectricalNetwork& net, double c1,
                               std::uint32_t n_max) {
    validate(net);
    if (!(c1 > 0.0)) throw std::invalid_argument("Error: c1 must be positive");
    if (n_max < 1) throw std::invalid_argument("Error: n_max must be positive");
    if (net.edges.empty())
        throw std::runtime_error("Error: no edges to pool");
    std::vector<double> c;
    c.reserve(net.edges.size());
    for (const CEdge& e : net.edges) c.push_back(e.c);
    std::sort(c.begin(), c.end());
    SurvivalTable table;
    table.c1 = c1;
    table.pool = c.size();
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        const auto it = std::upper_bound(c.begin(), c.end(), c1 * n);
        const double s = static_cast<double>(c.end() - it) / table.pool;
        const double p = 1.0 / n;
        const bool bad = s > p + 4.0 * std::sqrt(p * (1.0 - p) / table.pool);
        table.n.push_back(n);
        table.survival.push_back(s);
        table.violates.push_back(bad);
        table.any_violation |= bad;
    }
    return table;
}

}  // namespace wrcm
