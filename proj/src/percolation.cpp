#include "wrcm/percolation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wrcm/rng.hpp"
#include "wrcm/sampler.hpp"

namespace wrcm {

namespace {

// log of the binomial pmf, for the exact (Clopper-Pearson) interval
double log_binom_pmf(std::uint32_t n, std::uint32_t k, double p) {
    if (p <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
           k * std::log(p) + (n - k) * std::log1p(-p);
}

double binom_cdf(std::uint32_t n, std::uint32_t k, double p) {
    double acc = 0.0;
    for (std::uint32_t i = 0; i <= k; ++i) acc += std::exp(log_binom_pmf(n, i, p));
    return std::min(acc, 1.0);
}

void clopper_pearson(std::uint32_t n, std::uint32_t k, double alpha, double& lo,
                     double& hi) {
    if (k == 0) {
        lo = 0.0;
    } else {
        // smallest p with P(X >= k) >= alpha/2  <=>  P(X <= k-1) <= 1 - alpha/2
        double a = 0.0, b = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (a + b);
            (binom_cdf(n, k - 1, mid) > 1.0 - 0.5 * alpha ? a : b) = mid;
        }
        lo = 0.5 * (a + b);
    }
    if (k == n) {
        hi = 1.0;
    } else {
        double a = 0.0, b = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (a + b);
            (binom_cdf(n, k, mid) < 0.5 * alpha ? b : a) = mid;
        }
        hi = 0.5 * (a + b);
    }
}

// Does the Palm component contain a vertex at window distance >= R from the
// origin? Breadth-first search from the palm vertex.
bool palm_reaches(const Graph& graph, double R) {
    if (!graph.points.palm) throw std::invalid_argument("Error: graph has no palm vertex");
    const int d = graph.points.d;
    std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
    const auto far_enough = [&](std::uint32_t v) {
        return distance(graph.points.window, d, graph.points.position(v),
                        origin.data()) >= R;
    };
    std::vector<char> seen(graph.size(), 0);
    std::vector<std::uint32_t> stack{*graph.points.palm};
    seen[*graph.points.palm] = 1;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        if (far_enough(v)) return true;
        const std::uint32_t* nb = graph.neighbors(v);
        for (std::size_t i = 0; i < graph.degree(v); ++i) {
            if (!seen[nb[i]]) {
                seen[nb[i]] = 1;
                stack.push_back(nb[i]);
            }
        }
    }
    return false;
}

}  // namespace

ThetaEstimate estimate_theta(const ModelParams& params, double R,
                             std::uint32_t replicas, std::uint64_t seed) {
    validate(params);
    if (!(R > 0.0) || R > 0.5 * params.window.side)
        throw std::invalid_argument("Error: radius must lie in (0, side/2]");
    if (replicas < 1) throw std::invalid_argument("Error: need at least one replica");
    ThetaEstimate est;
    est.beta = params.beta;
    est.radius = R;
    est.replicas = replicas;
    const std::uint64_t base = chain(mix64(seed), tag::replica);
    for (std::uint32_t r = 0; r < replicas; ++r) {
        const std::uint64_t rseed = chain(base, r);
        MarkedPointSet pts = add_palm_origin(sample_points(params, rseed), rseed);
        const Graph g = sample_graph(pts, params, SampleMethod::Cell, rseed);
        if (palm_reaches(g, R)) ++est.hits;
    }
    est.theta_hat = static_cast<double>(est.hits) / replicas;
    clopper_pearson(replicas, est.hits, 0.05, est.ci_lo, est.ci_hi);
    return est;
}

BetaCInterval estimate_beta_c(const ModelParams& params, double R,
                              std::uint32_t replicas, double beta_lo, double beta_hi,
                              double tol, std::uint64_t seed, double crossing_level) {
    if (!(beta_lo > 0.0) || !(beta_lo < beta_hi))
        throw std::invalid_argument("Error: need 0 < beta_lo < beta_hi");
    if (!(tol > 0.0)) throw std::invalid_argument("Error: tolerance must be positive");
    if (!(crossing_level > 0.0 && crossing_level < 1.0))
        throw std::invalid_argument("Error: crossing level must lie in (0,1)");

    // The point sets do not depend on beta, so pre-build them once per replica
    // and re-draw only the edges; the shared seed is what couples the sweep.
    ModelParams p = params;
    p.beta = beta_lo;
    validate(p);
    if (!(R > 0.0) || R > 0.5 * p.window.side)
        throw std::invalid_argument("Error: radius must lie in (0, side/2]");
    if (replicas < 1) throw std::invalid_argument("Error: need at least one replica");
    const std::uint64_t base = chain(mix64(seed), tag::replica);
    std::vector<MarkedPointSet> point_sets;
    std::vector<std::uint64_t> rseeds;
    point_sets.reserve(replicas);
    for (std::uint32_t r = 0; r < replicas; ++r) {
        const std::uint64_t rseed = chain(base, r);
        rseeds.push_back(rseed);
        point_sets.push_back(add_palm_origin(sample_points(p, rseed), rseed));
    }
    BetaCInterval out;
    out.crossing_level = crossing_level;
    const auto theta_at = [&](double beta) {
        p.beta = beta;
        std::uint32_t hits = 0;
        for (std::uint32_t r = 0; r < replicas; ++r) {
            const Graph g =
                sample_graph(point_sets[r], p, SampleMethod::Cell, rseeds[r]);
            if (palm_reaches(g, R)) ++hits;
        }
        ++out.evaluations;
        return static_cast<double>(hits) / replicas;
    };
    double lo = beta_lo, hi = beta_hi;
    if (theta_at(lo) >= crossing_level || theta_at(hi) < crossing_level)
        throw std::runtime_error(
            "Error: no crossing of the level inside [beta_lo, beta_hi]");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (theta_at(mid) >= crossing_level ? hi : lo) = mid;
    }
    out.lo = lo;
    out.hi = hi;
    return out;
}

}  // namespace wrcm
