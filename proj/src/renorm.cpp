#include "wrcm/renorm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "wrcm/criteria.hpp"
#include "wrcm/rng.hpp"

namespace wrcm {

namespace {

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

// box index per axis for boxes of side w centered on w * Z^d
int box_coord(double x, double w) { return static_cast<int>(std::floor(x / w + 0.5)); }

std::array<int, 3> box_of(const double* p, int d, double w) {
    std::array<int, 3> c{0, 0, 0};
    for (int k = 0; k < d; ++k) c[k] = box_coord(p[k], w);
    return c;
}

// enumerate [-xmax, xmax]^d in lexicographic order
std::vector<std::array<int, 3>> box_range(int d, int xmax) {
    std::vector<std::array<int, 3>> out;
    std::array<int, 3> c{0, 0, 0};
    const int lo = -xmax;
    for (int k = 0; k < d; ++k) c[k] = lo;
    for (;;) {
        out.push_back(c);
        int k = d - 1;
        while (k >= 0 && c[k] == xmax) c[k--] = lo;
        if (k < 0) break;
        ++c[k];
    }
    return out;
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::uint32_t n) : parent(n) {
        for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

ConnectorBound connector_bound(const MarkedVertex& x, const MarkedVertex& y,
                               const ModelParams& params) {
    validate(params);
    if (params.kernel != Kernel::Min)
        throw std::invalid_argument("Error: connector bound needs the min kernel");
    if (x.position.size() != static_cast<std::size_t>(params.d) ||
        y.position.size() != static_cast<std::size_t>(params.d))
        throw std::invalid_argument("Error: vertex dimension mismatch");
    for (double m : {x.mark, y.mark})
        if (!(m > 0.0) || m > 0.5)
            throw std::invalid_argument("Error: connector marks must lie in (0, 1/2]");

    const ProfileConstants pc =
        profile_constants(params.profile, params.delta, params.d);
    const double dist = euclid(x.position, y.position);
    const auto k_fn = [&](double s, double t) {
        const double reach = std::pow(s, -params.gamma / params.d) + dist;
        const double arg =
            std::pow(t, params.gamma) * std::pow(reach, params.d) / params.beta;
        return std::pow(s, -params.gamma) *
               profile_fast(params.profile, params.delta, pc, arg);
    };
    ConnectorBound out;
    out.k_xy = k_fn(x.mark, y.mark);
    out.k_yx = k_fn(y.mark, x.mark);
    const double rho0 =
        profile_fast(params.profile, params.delta, pc, 1.0 / params.beta);
    out.q = 0.5 * rho0 * unit_ball_volume(params.d) * std::max(out.k_xy, out.k_yx);
    out.lower_bound = -std::expm1(-out.q);
    return out;
}

bool connector_exists(const Graph& graph, std::uint32_t i, std::uint32_t j) {
    if (i >= graph.size() || j >= graph.size())
        throw std::invalid_argument("Error: vertex out of range");
    if (i == j) throw std::invalid_argument("Error: need two distinct vertices");
    const std::uint32_t* a = graph.neighbors(i);
    const std::uint32_t* b = graph.neighbors(j);
    const std::size_t na = graph.degree(i), nb = graph.degree(j);
    std::size_t p = 0, q = 0;
    while (p < na && q < nb) {
        if (a[p] < b[q]) {
            ++p;
        } else if (a[p] > b[q]) {
            ++q;
        } else {
            if (graph.points.mark[a[p]] > 0.5) return true;
            ++p;
            ++q;
        }
    }
    return false;
}

OrderStatBounds order_stat_bounds(std::uint64_t n, double a, double b, double x,
                                  double y) {
    if (!(a >= 0.0) || !(b > 0.0) || a > b)
        throw std::invalid_argument("Error: need 0 <= a <= b with b > 0");
    if (!(x >= 0.0) || !(y > 0.0) || x >= y || y > 1.0)
        throw std::invalid_argument("Error: need 0 <= x < y <= 1");
    OrderStatBounds out;
    out.exact_min_given_max = std::pow(1.0 - a / b, static_cast<double>(n));
    out.bound = std::exp(-static_cast<double>(n) * a / b);
    out.exact_cond = x / y;
    return out;
}

StageSequences stage_sequences(Kernel kernel, double gamma, double delta, int d,
                               double beta, std::uint32_t n_star, double eps,
                               std::uint32_t N, std::uint64_t seed, double c1_max) {
    if (d < 1 || d > 3) throw std::invalid_argument("Error: d must be 1, 2 or 3");
    if (!(beta > 0.0)) throw std::invalid_argument("Error: beta must be positive");
    if (!(delta > 1.0)) throw std::invalid_argument("Error: delta must exceed 1");
    if (n_star < 1) throw std::invalid_argument("Error: n_star must be positive");
    if (N < 1) throw std::invalid_argument("Error: need at least one term");
    const double dd = d;
    double eps_max = 0.0;
    switch (kernel) {
        case Kernel::Min:
        case Kernel::Sum:
        case Kernel::Pa:
            if (!(gamma > delta / (delta + 1.0) && gamma < 1.0))
                throw std::invalid_argument(
                    "Error: gamma outside the robust regime for this kernel");
            eps_max = 2.0 * dd * (gamma * (delta + 1.0) - delta);
            break;
        case Kernel::Prod:
            if (!(gamma > 0.5 && gamma < 1.0))
                throw std::invalid_argument(
                    "Error: gamma outside the robust regime for this kernel");
            eps_max = dd * (2.0 - 1.0 / gamma);
            break;
        case Kernel::Max:
            if (!(gamma > 0.0))
                throw std::invalid_argument("Error: gamma must be positive");
            if (!(c1_max > 0.0))
                throw std::invalid_argument("Error: c1_max must be positive");
            eps_max = gamma / (1.0 + gamma);
            break;
        case Kernel::Plain:
            throw std::invalid_argument(
                "Error: the plain kernel has no robust regime");
    }
    if (!(eps > 0.0 && eps < eps_max))
        throw std::invalid_argument("Error: eps outside its legal range");

    StageSequences out;
    out.kernel = kernel;
    out.gamma = gamma;
    out.delta = delta;
    out.beta = beta;
    out.d = d;
    out.n_star = n_star;
    out.eps = eps;
    const double m = n_star;
    const double lg_m1 = std::lgamma(m + 1.0);
    const auto log_u_at = [&](double n) {
        switch (kernel) {
            case Kernel::Min:
            case Kernel::Sum:
            case Kernel::Pa: {
                // sum/pa inherit the min-kernel thresholds by domination
                const ProfileConstants pc =
                    profile_constants(Profile::Polynomial, delta, d);
                const double rho_inv_beta = std::min(pc.b, std::pow(beta, delta));
                const double denom = gamma * (delta + 1.0);
                const double log_c1 =
                    -(std::log(0.5 * unit_ball_volume(d)) + std::log(rho_inv_beta) +
                      (delta - 1.0) * std::log(beta) -
                      0.5 * dd * delta * std::log(dd)) /
                    denom;
                return -log_c1 - eps / denom * std::log(m + n) -
                       (m + n) * dd * delta / (m * denom) * std::log(2.0) -
                       2.0 * dd * delta / denom * (std::lgamma(m + n + 1.0) - lg_m1);
            }
            case Kernel::Prod:
                return std::log(beta) / (2.0 * gamma) -
                       dd / (4.0 * gamma) * std::log(dd) -
                       eps / (2.0 * gamma * delta) * std::log(m + n + 2.0) -
                       dd * (m + n + 2.0) / (2.0 * m * gamma) * std::log(2.0) -
                       dd / gamma * (std::lgamma(m + n + 4.0) - lg_m1);
            case Kernel::Max:
                return -std::log(c1_max) -
                       eps / (delta * (1.0 + gamma)) * std::log(m + n + 2.0) -
                       (m + n + 2.0) * dd / (m * (1.0 + gamma)) * std::log(2.0) -
                       2.0 * dd / (1.0 + gamma) * (std::lgamma(m + n + 4.0) - lg_m1);
            default:
                return 0.0;
        }
    };

    for (std::uint32_t n = 1; n <= N; ++n) {
        out.log_u.push_back(log_u_at(n));
        out.u.push_back(std::exp(out.log_u.back()));
        out.big_d.push_back(2.0 * (m + n) * (m + n));
    }

    // stage-1 box probability: P(Poisson(u_1 D_1^d) >= 1), estimated by
    // simulating the first inter-arrival time of the thinned process
    const double log_lambda = out.log_u[0] + dd * std::log(out.big_d[0]);
    const double miss = std::exp(-std::exp(log_lambda));
    Stream stream(seed, tag::replica);
    const std::uint32_t replicas = 10000;
    std::uint32_t hits = 0;
    for (std::uint32_t r = 0; r < replicas; ++r)
        if (stream.next_u01() >= miss) ++hits;
    out.p_b = static_cast<double>(hits) / replicas;

    double inv_sum = 0.0;
    for (std::uint32_t n = 1; n <= N; ++n) {
        const double c = out.p_b * std::pow(m + n, 2.0 * dd);
        out.big_c.push_back(c);
        inv_sum += 1.0 / c;
        out.partial_inv_c.push_back(inv_sum);
    }
    return out;
}

BoxLabeling classify_boxes(const Graph& graph, std::uint32_t l, double epsilon_star) {
    if (l < 1) throw std::invalid_argument("Error: stage must be positive");
    if (!(epsilon_star > 0.0))
        throw std::invalid_argument("Error: epsilon_star must be positive");
    const int d = graph.points.d;
    const double side = graph.points.window.side;
    const double n_l = scale_sequence(l).n.back();
    if (side < 3.0 * n_l)
        throw std::invalid_argument("Error: window too small for this stage");

    BoxLabeling out;
    out.l = l;
    out.n_l = n_l;
    out.threshold = std::pow(n_l, -d * (1.0 + epsilon_star));

    const std::uint32_t nv = graph.size();
    std::vector<char> bad(nv, 0);
    for (std::uint32_t v = 0; v < nv; ++v)
        bad[v] = graph.points.mark[v] < out.threshold;
    std::vector<char> touches_bad(nv, 0);
    for (const Edge& e : graph.edges)
        if (bad[e.first] || bad[e.second]) {
            if (bad[e.second]) touches_bad[e.first] = 1;
            if (bad[e.first]) touches_bad[e.second] = 1;
        }

    std::map<std::array<int, 3>, char> box_bad;
    std::map<std::array<int, 3>, char> box_irregular;
    for (std::uint32_t v = 0; v < nv; ++v) {
        const auto c = box_of(graph.points.position(v), d, n_l);
        if (bad[v]) box_bad[c] = 1;
        if (touches_bad[v]) box_irregular[c] = 1;
    }

    const int xmax =
        static_cast<int>(std::floor(side / (2.0 * n_l) - 1.5 + 1e-12));
    if (xmax < 0)
        throw std::invalid_argument("Error: window too small for this stage");
    std::uint32_t n_bad = 0, n_irregular = 0;
    for (const auto& c : box_range(d, xmax)) {
        bool is_bad = false;
        std::array<int, 3> nb = c;
        // scan the full 3^d neighbourhood, the box itself included
        const auto scan = [&](auto&& self, int axis) -> void {
            if (is_bad) return;
            if (axis == d) {
                const auto it = box_bad.find(nb);
                if (it != box_bad.end() && it->second) is_bad = true;
                return;
            }
            for (int s = -1; s <= 1 && !is_bad; ++s) {
                nb[axis] = c[axis] + s;
                self(self, axis + 1);
            }
            nb[axis] = c[axis];
        };
        scan(scan, 0);
        BoxLabel label = BoxLabel::Good;
        if (is_bad) {
            label = BoxLabel::Bad;
            ++n_bad;
        } else {
            const auto it = box_irregular.find(c);
            if (it != box_irregular.end() && it->second) {
                label = BoxLabel::Irregular;
                ++n_irregular;
            }
        }
        for (int k = 0; k < d; ++k) out.coords.push_back(c[k]);
        out.labels.push_back(label);
    }
    out.bad_fraction = static_cast<double>(n_bad) / out.labels.size();
    out.irregular_fraction = static_cast<double>(n_irregular) / out.labels.size();
    return out;
}

CoarseGrain coarse_grain(const Graph& graph, double M, double lambda) {
    if (!(M > 0.0)) throw std::invalid_argument("Error: box side must be positive");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("Error: lambda must lie in (0,1)");
    const int d = graph.points.d;
    const double side = graph.points.window.side;
    if (side < 3.0 * M)
        throw std::invalid_argument("Error: window too small for this box side");

    CoarseGrain out;
    out.box_side = M;
    out.lambda = lambda;
    out.threshold = std::pow(M, lambda * d);

    const int xmax = static_cast<int>(std::floor(side / (2.0 * M) - 0.5 + 1e-12));
    const auto sites = box_range(d, xmax);
    std::map<std::array<int, 3>, std::uint32_t> site_id;
    for (std::uint32_t i = 0; i < sites.size(); ++i) {
        site_id[sites[i]] = i;
        for (int k = 0; k < d; ++k) out.coords.push_back(sites[i][k]);
    }

    constexpr std::uint32_t kNone = 0xffffffffu;
    const std::uint32_t nv = graph.size();
    std::vector<std::uint32_t> site_of(nv, kNone);
    for (std::uint32_t v = 0; v < nv; ++v) {
        const auto c = box_of(graph.points.position(v), d, M);
        const auto it = site_id.find(c);
        if (it != site_id.end()) site_of[v] = it->second;
    }

    // clusters induced inside each box: union only same-site edges
    UnionFind uf(nv);
    for (const Edge& e : graph.edges)
        if (site_of[e.first] != kNone && site_of[e.first] == site_of[e.second])
            uf.unite(e.first, e.second);
    std::vector<std::uint32_t> cluster_size(nv, 0);
    for (std::uint32_t v = 0; v < nv; ++v)
        if (site_of[v] != kNone) ++cluster_size[uf.find(v)];

    // occupying set per occupied site: the maximal cluster whose smallest
    // vertex index is least
    std::vector<std::uint32_t> best_root(sites.size(), kNone);
    out.occupied.assign(sites.size(), 0);
    for (std::uint32_t v = 0; v < nv; ++v) {
        if (site_of[v] == kNone) continue;
        const std::uint32_t root = uf.find(v);
        if (cluster_size[root] < out.threshold) continue;
        auto& best = best_root[site_of[v]];
        // roots are the smallest member of their cluster, so comparing roots
        // picks the lexicographically-first cluster; ties in size included
        if (best == kNone || cluster_size[root] > cluster_size[best] ||
            (cluster_size[root] == cluster_size[best] && root < best))
            best = root;
        out.occupied[site_of[v]] = 1;
    }

    std::set<std::pair<std::uint32_t, std::uint32_t>> bonds;
    for (const Edge& e : graph.edges) {
        const std::uint32_t sa = site_of[e.first], sb = site_of[e.second];
        if (sa == kNone || sb == kNone || sa == sb) continue;
        if (!out.occupied[sa] || !out.occupied[sb]) continue;
        if (uf.find(e.first) != best_root[sa] || uf.find(e.second) != best_root[sb])
            continue;
        bonds.insert({std::min(sa, sb), std::max(sa, sb)});
    }
    out.bonds.assign(bonds.begin(), bonds.end());
    return out;
}

double communication_bound(double M, double lambda, double delta_star, double c_star,
                           const std::vector<int>& v, const std::vector<int>& w,
                           int d) {
    if (d < 1) throw std::invalid_argument("Error: dimension must be positive");
    if (!(M > 0.0)) throw std::invalid_argument("Error: M must be positive");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("Error: lambda must lie in (0,1)");
    if (!(delta_star > 1.0 && delta_star < 2.0))
        throw std::invalid_argument("Error: delta_star must lie in (1,2)");
    if (!(c_star > 0.0)) throw std::invalid_argument("Error: c_star must be positive");
    if (v.size() != static_cast<std::size_t>(d) || v.size() != w.size())
        throw std::invalid_argument("Error: site dimension mismatch");
    long dist = 0;
    for (int k = 0; k < d; ++k) dist = std::max(dist, std::labs(long(v[k]) - w[k]));
    if (dist == 0) throw std::invalid_argument("Error: sites must differ");
    const double arg = c_star * std::pow(M, 2.0 * d * lambda - delta_star * d) /
                       std::pow(static_cast<double>(dist), delta_star * d);
    return -std::expm1(-arg);
}

}  // namespace wrcm
