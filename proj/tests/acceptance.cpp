// End-to-end acceptance checks. Each criterion prints a single PASS/FAIL
// line; the process exits nonzero when any selected criterion fails.
// Tolerances and thresholds are pinned as constants next to each check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <queue>
#include <string>
#include <vector>

#include "util.hpp"
#include "wrcm/criteria.hpp"
#include "wrcm/electrical.hpp"
#include "wrcm/graph_analysis.hpp"
#include "wrcm/model.hpp"
#include "wrcm/quadrature.hpp"
#include "wrcm/renorm.hpp"
#include "wrcm/rng.hpp"
#include "wrcm/sampler.hpp"

using namespace wrcm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

// The profile integrates to one over the plane: reduce to the radial scale
// u = |z|^d, so the target is kappa_d * integral of rho over (0, inf).
Outcome check_profile_normalization() {
    constexpr double kTol = 1e-6;
    Outcome out;
    for (Profile prof : {Profile::Indicator, Profile::Polynomial}) {
        for (int d : {1, 2, 3}) {
            for (double delta : {1.5, 2.0, 3.0}) {
                const double kd = unit_ball_volume(d);
                const auto rho = [&](double u) {
                    return profile_eval(prof, delta, d, u);
                };
                double total = 0.0;
                if (prof == Profile::Indicator) {
                    const double a = profile_constants(prof, delta, d).a;
                    total = kd * quad::integrate(rho, 0.0, 2.0 * a).value;
                } else {
                    const double b = profile_constants(prof, delta, d).b;
                    const double ustar = std::pow(b, -1.0 / delta);
                    const double plateau =
                        quad::integrate(rho, 0.0, ustar).value;
                    // tail u in (ustar, inf) via u = ustar / v^2; the extra
                    // v factor keeps the integrand bounded down to delta 1.5
                    const auto tail_f = [&](double v) {
                        return rho(ustar / (v * v)) * 2.0 * ustar / (v * v * v);
                    };
                    const double tail = quad::integrate(tail_f, 0.0, 1.0).value;
                    total = kd * (plateau + tail);
                }
                if (std::fabs(total - 1.0) > kTol)
                    out.fail(std::string(to_string(prof)) +
                             fmt(" d=%g delta=%g", double(d), delta) +
                             fmt(" integral %.8f", total));
            }
        }
    }
    if (out.pass) out.note("18 profile integrals within 1e-6");
    return out;
}

// ---------------------------------------------------------------- criterion 2

struct PairCase {
    Kernel k;
    Profile prof;
    double gamma, delta, beta;
    int d;
    double r, s, t;
};

Outcome check_edge_law() {
    constexpr int kSeeds = 100000;
    constexpr int kConfigs = 1000;
    Outcome out;

    const std::vector<PairCase> pairs = {
        {Kernel::Plain, Profile::Polynomial, 0.5, 2.5, 1.0, 2, 1.0, 0.5, 0.5},
        {Kernel::Plain, Profile::Polynomial, 0.5, 3.0, 0.5, 1, 2.0, 0.3, 0.8},
        {Kernel::Sum, Profile::Polynomial, 0.5, 3.0, 1.0, 2, 2.5, 0.25, 0.25},
        {Kernel::Sum, Profile::Polynomial, 0.3, 2.5, 1.0, 1, 5.0, 0.1, 0.9},
        {Kernel::Min, Profile::Polynomial, 0.5, 3.0, 2.0, 2, 3.0, 0.2, 0.8},
        {Kernel::Min, Profile::Polynomial, 0.2, 2.2, 1.0, 3, 2.0, 0.5, 0.7},
        {Kernel::Max, Profile::Polynomial, 0.7, 3.0, 1.0, 1, 4.0, 0.3, 0.6},
        {Kernel::Max, Profile::Polynomial, 0.3, 2.0, 1.0, 2, 1.5, 0.5, 0.5},
        {Kernel::Prod, Profile::Polynomial, 0.45, 3.5, 1.5, 1, 8.0, 0.3, 0.2},
        {Kernel::Prod, Profile::Polynomial, 0.3, 2.5, 1.0, 2, 2.0, 0.6, 0.6},
        {Kernel::Pa, Profile::Polynomial, 0.4, 3.0, 1.0, 2, 3.0, 0.5, 0.5},
        {Kernel::Pa, Profile::Polynomial, 0.25, 2.5, 1.0, 1, 6.0, 0.2, 0.9},
        {Kernel::Pa, Profile::Polynomial, 0.8, 3.0, 1.0, 2, 2.0, 0.01, 0.9},
        {Kernel::Min, Profile::Polynomial, 0.9, 2.5, 1.0, 2, 5.0, 0.05, 0.5},
        {Kernel::Plain, Profile::Indicator, 0.5, 2.0, 1.0, 2, 0.5, 0.5, 0.5},
        {Kernel::Plain, Profile::Indicator, 0.5, 2.0, 1.0, 2, 0.6, 0.5, 0.5},
        {Kernel::Min, Profile::Indicator, 0.5, 2.0, 1.0, 2, 1.2, 0.04, 0.5},
        {Kernel::Min, Profile::Indicator, 0.5, 2.0, 1.0, 2, 1.3, 0.04, 0.5},
        {Kernel::Max, Profile::Indicator, 0.5, 2.0, 2.0, 1, 1.0, 0.25, 0.25},
        {Kernel::Pa, Profile::Indicator, 0.4, 2.0, 1.0, 3, 1.0, 0.3, 0.3},
    };

    int idx = 0;
    for (const PairCase& pc : pairs) {
        ++idx;
        ModelParams p;
        p.d = pc.d;
        p.beta = pc.beta;
        p.gamma = pc.gamma;
        p.delta = pc.delta;
        p.kernel = pc.k;
        p.profile = pc.prof;
        p.window = Window{pc.r + 4.0, Geometry::FreeBox};

        MarkedPointSet pts;
        pts.d = pc.d;
        pts.window = p.window;
        pts.pos.assign(static_cast<std::size_t>(2 * pc.d), 0.0);
        pts.pos[0] = -0.5 * pc.r;
        pts.pos[static_cast<std::size_t>(pc.d)] = 0.5 * pc.r;
        pts.mark = {pc.s, pc.t};

        const double prob = connection_prob(p, pts.vertex(0), pts.vertex(1));
        long hits = 0;
        for (int seed = 1; seed <= kSeeds; ++seed)
            hits += sample_graph(pts, p, SampleMethod::Naive, seed).edges.empty()
                        ? 0
                        : 1;
        const double freq = double(hits) / kSeeds;
        if (prob == 0.0 || prob == 1.0) {
            if (freq != prob)
                out.fail(fmt("pair %g deterministic p=%.0f freq=%.6f",
                             double(idx), prob, freq));
        } else {
            const double sigma = std::sqrt(prob * (1.0 - prob) / kSeeds);
            if (std::fabs(freq - prob) > 4.0 * sigma)
                out.fail(fmt("pair %g |%.5f", double(idx), freq) +
                         fmt(" - %.5f| > 4x%.5f", prob, sigma));
        }
    }

    const Kernel kernels[] = {Kernel::Plain, Kernel::Sum,  Kernel::Min,
                              Kernel::Max,   Kernel::Prod, Kernel::Pa};
    int mismatches = 0;
    for (int cfg = 0; cfg < kConfigs; ++cfg) {
        ModelParams p;
        p.d = 1 + cfg % 3;
        p.kernel = kernels[cfg % 6];
        p.profile = cfg % 2 ? Profile::Polynomial : Profile::Indicator;
        p.beta = (cfg % 3 == 0) ? 0.5 : (cfg % 3 == 1 ? 1.0 : 2.0);
        p.gamma = (cfg % 4) * 0.2 + 0.15;
        p.delta = 2.0 + (cfg % 5) * 0.4;
        const double side = p.d == 1 ? 48.0 : (p.d == 2 ? 8.0 : 4.2);
        p.window =
            Window{side, cfg % 2 ? Geometry::Torus : Geometry::FreeBox};
        p.seed = 1000 + cfg;
        const MarkedPointSet pts = sample_points(p, p.seed);
        const Graph a = sample_graph(pts, p, SampleMethod::Naive, p.seed);
        const Graph b = sample_graph(pts, p, SampleMethod::Cell, p.seed);
        if (a.edges != b.edges) ++mismatches;
    }
    if (mismatches)
        out.fail(fmt("%g sampler mismatches across configs", mismatches));
    if (out.pass)
        out.note(fmt("20 pairs within 4 sigma over %g seeds, %g configs equal",
                     kSeeds, kConfigs));
    return out;
}

// ---------------------------------------------------------------- criterion 3

Outcome check_degree_exponent() {
    constexpr double kTol = 0.3;
    constexpr double kPoints = 100000.0;
    Outcome out;
    struct Case {
        double gamma, beta, tau;
        std::uint64_t seed;
    };
    for (const Case c : {Case{0.25, 0.9375, 5.0, 7001},
                         Case{0.5, 2.0, 3.0, 7002}}) {
        ModelParams p;
        p.d = 2;
        p.beta = c.beta;
        p.gamma = c.gamma;
        p.delta = 3.0;
        p.kernel = Kernel::Pa;
        p.profile = Profile::Polynomial;
        p.window = Window{std::sqrt(kPoints), Geometry::Torus};
        p.seed = c.seed;
        const MarkedPointSet pts = sample_points(p, p.seed);
        const Graph g = sample_graph(pts, p, SampleMethod::Cell, p.seed);
        const TailEstimate est = degree_tail_exponent(g, 0.05);
        out.note(fmt("gamma=%.2f tau_hat=%.3f (target %.0f)", c.gamma,
                     est.tau_hat, c.tau));
        if (std::fabs(est.tau_hat - c.tau) > kTol)
            out.fail(fmt("tau_hat %.3f off target %.0f by more than %.1f",
                         est.tau_hat, c.tau, kTol));
    }
    return out;
}

// ---------------------------------------------------------------- criterion 4

Outcome check_kernel_inequalities() {
    constexpr int kDraws = 10000;
    constexpr double kUlp = 4e-16;  // one-sided slack for pow rounding
    Outcome out;
    Stream st(20260815, tag::replica);
    int violations = 0;
    for (int i = 0; i < kDraws; ++i) {
        const double s = st.next_u01();
        const double t = st.next_u01();
        const double gamma = 0.05 + 0.9 * st.next_u01();
        const int d = 1 + int(st.next_index(3));
        const double gsum = kernel_eval(Kernel::Sum, s, t, gamma, 1.0, d);
        const double gmin = kernel_eval(Kernel::Min, s, t, gamma, 1.0, d);
        const double gpa = kernel_eval(Kernel::Pa, s, t, gamma, 1.0, d);
        const double gprod = kernel_eval(Kernel::Prod, s, t, gamma, 1.0, d);
        const double two_d = double(1 << d);
        if (!(gsum <= gmin * (1.0 + kUlp))) ++violations;
        if (!(gmin <= two_d * gsum * (1.0 + kUlp))) ++violations;
        if (!(gpa <= gmin * (1.0 + kUlp))) ++violations;
        if (!(gprod <= gmin * (1.0 + kUlp))) ++violations;
    }
    if (violations) out.fail(fmt("%g inequality violations", violations));
    else out.note(fmt("0 violations over %g mark draws", kDraws));
    return out;
}

// ---------------------------------------------------------------- criterion 5

Outcome check_connector_frequency() {
    constexpr int kReplicas = 10000;
    Outcome out;
    ModelParams p;
    p.d = 2;
    p.beta = 1.0;
    p.gamma = 0.5;
    p.delta = 3.0;
    p.kernel = Kernel::Min;
    p.profile = Profile::Polynomial;
    const ProfileConstants pcst = profile_constants(p.profile, p.delta, p.d);

    int cell = 0;
    for (double mark : {0.005, 0.02, 0.05}) {
        for (double dist : {2.0, 3.0, 5.0}) {
            ++cell;
            const double side = dist + 6.0;
            p.window = Window{side, Geometry::FreeBox};
            const MarkedVertex x{{-0.5 * dist, 0.0}, mark};
            const MarkedVertex y{{0.5 * dist, 0.0}, mark};
            const double bound = connector_bound(x, y, p).lower_bound;

            int hits = 0;
            for (int rep = 1; rep <= kReplicas; ++rep) {
                Stream st(chain(chain(0xC0FFEE, cell), rep));
                const std::uint64_t n = poisson(st, side * side);
                bool found = false;
                for (std::uint64_t w = 0; w < n && !found; ++w) {
                    const double wx = (st.next_u01() - 0.5) * side;
                    const double wy = (st.next_u01() - 0.5) * side;
                    const double wm = st.next_u01();
                    if (wm <= 0.5) continue;
                    const double dx = std::hypot(wx - x.position[0], wy);
                    if (st.next_u01() >
                        phi_at_distance(p, pcst, wm, mark, dx))
                        continue;
                    const double dy = std::hypot(wx - y.position[0], wy);
                    if (st.next_u01() <=
                        phi_at_distance(p, pcst, wm, mark, dy))
                        found = true;
                }
                hits += found;
            }
            const double freq = double(hits) / kReplicas;
            const double sigma =
                std::sqrt(std::max(bound * (1.0 - bound), 1e-12) / kReplicas);
            if (freq < bound - 4.0 * sigma)
                out.fail(fmt("marks %.3f dist %.0f freq %.4f", mark, dist,
                             freq) +
                         fmt(" < bound %.4f - 4 sigma", bound));
        }
    }
    if (out.pass) out.note("9 grid cells meet the two-hop lower bound");
    return out;
}

// ---------------------------------------------------------------- criterion 6

ElectricalNetwork random_network(Stream& st, int max_n) {
    ElectricalNetwork net;
    net.n = 2 + static_cast<std::uint32_t>(st.next_index(max_n - 1));
    for (std::uint32_t v = 1; v < net.n; ++v) {
        const std::uint32_t u = static_cast<std::uint32_t>(st.next_index(v));
        net.edges.push_back({u, v, 0.1 + 9.9 * st.next_u01()});
    }
    const std::uint64_t extra = st.next_index(net.n);
    for (std::uint64_t e = 0; e < extra; ++e) {
        const std::uint32_t a = static_cast<std::uint32_t>(st.next_index(net.n));
        std::uint32_t b = static_cast<std::uint32_t>(st.next_index(net.n));
        if (a == b) b = (b + 1) % net.n;
        net.edges.push_back({std::min(a, b), std::max(a, b),
                             0.1 + 9.9 * st.next_u01()});
    }
    return net;
}

Outcome check_conductance_solver() {
    constexpr int kNets = 200;
    constexpr double kRelTol = 1e-9;
    constexpr double kExact = 1e-12;
    Outcome out;

    Stream st(0xACCE55, tag::bootstrap);
    for (int i = 0; i < kNets; ++i) {
        const ElectricalNetwork net = random_network(st, 8);
        std::vector<std::uint32_t> sinks{net.n - 1};
        if (net.n > 2 && i % 3 == 0) sinks.push_back(net.n - 2);
        const double cg = effective_conductance(net, 0, sinks, 1e-10);
        const double direct = testutil::dense_conductance(net, 0, sinks);
        if (std::fabs(cg - direct) > kRelTol * std::max(1.0, direct))
            out.fail(fmt("net %g: cg %.12f vs dense %.12f", double(i), cg,
                         direct));

        // Nash-Williams with breadth-first edge layers is an upper bound on
        // the conductance to the farthest layer.
        std::vector<std::vector<std::uint32_t>> nbr(net.n);
        for (std::uint32_t e = 0; e < net.edges.size(); ++e) {
            nbr[net.edges[e].u].push_back(e);
            nbr[net.edges[e].v].push_back(e);
        }
        std::vector<int> level(net.n, -1);
        std::queue<std::uint32_t> q;
        level[0] = 0;
        q.push(0);
        while (!q.empty()) {
            const std::uint32_t v = q.front();
            q.pop();
            for (std::uint32_t e : nbr[v]) {
                const std::uint32_t w =
                    net.edges[e].u == v ? net.edges[e].v : net.edges[e].u;
                if (level[w] < 0) {
                    level[w] = level[v] + 1;
                    q.push(w);
                }
            }
        }
        const int max_level = *std::max_element(level.begin(), level.end());
        std::vector<std::vector<std::uint32_t>> cuts(max_level);
        for (std::uint32_t e = 0; e < net.edges.size(); ++e) {
            const int lu = level[net.edges[e].u], lv = level[net.edges[e].v];
            if (lu != lv) cuts[std::min(lu, lv)].push_back(e);
        }
        std::vector<std::uint32_t> far;
        for (std::uint32_t v = 0; v < net.n; ++v)
            if (level[v] == max_level) far.push_back(v);
        const double bound = nash_williams_bound(net, 0, cuts);
        const double ce = effective_conductance(net, 0, far, 1e-10);
        if (bound < ce - kRelTol)
            out.fail(fmt("net %g: cut bound %.9f < C %.9f", double(i), bound,
                         ce));
    }

    ElectricalNetwork series;
    series.n = 3;
    series.edges = {{0, 1, 2.0}, {1, 2, 2.0}};
    if (std::fabs(effective_conductance(series, 0, {2}, 1e-12) - 1.0) > kExact)
        out.fail("series 2,2 is not 1.0");
    VertexMap vmap;
    const ElectricalNetwork red =
        reduce_series_parallel_mapped(series, {0, 2}, vmap);
    if (red.edges.size() != 1 || std::fabs(red.edges[0].c - 1.0) > kExact)
        out.fail("series reduction is not a single unit edge");

    ElectricalNetwork par;
    par.n = 2;
    par.edges = {{0, 1, 1.0}, {0, 1, 3.0}};
    const ElectricalNetwork pred = reduce_series_parallel(par);
    if (pred.edges.size() != 1 || std::fabs(pred.edges[0].c - 4.0) > kExact)
        out.fail("parallel 1,3 does not merge to 4");

    if (out.pass)
        out.note(fmt("%g nets vs dense solve, cut bounds hold, reductions "
                     "exact",
                     kNets));
    return out;
}

// ---------------------------------------------------------------- criterion 7

Outcome check_lattice_projection() {
    Outcome out;

    // same unit cell: glued, edge dropped
    {
        const Graph g = testutil::build_graph(
            2, 8.0, {{0.2, 0.2}, {0.7, 0.7}}, {0.5, 0.5}, {{0, 1}});
        const ElectricalNetwork proj = project_to_lattice(g);
        if (proj.n != 1 || !proj.edges.empty())
            out.fail("same-cell pair did not glue to an isolated site");
    }
    // a length-2 horizontal edge adds 2 to both bonds along its path
    {
        const Graph g = testutil::build_graph(
            2, 8.0, {{0.5, 0.5}, {2.5, 0.5}}, {0.5, 0.5}, {{0, 1}});
        const ElectricalNetwork proj = project_to_lattice(g);
        const bool ok = proj.n == 3 && proj.edges.size() == 2 &&
                        proj.edges[0].c == 2.0 && proj.edges[1].c == 2.0 &&
                        proj.coords[1] == std::array<int, 2>{1, 0};
        if (!ok) out.fail("length-2 edge did not add 2 to both path bonds");
    }
    // two edges over the same cell pair accumulate on one bond
    {
        const Graph g = testutil::build_graph(
            2, 8.0, {{0.3, 0.3}, {1.3, 0.3}, {0.6, 0.7}, {1.7, 0.7}},
            {0.5, 0.5, 0.5, 0.5}, {{0, 1}, {2, 3}});
        const ElectricalNetwork proj = project_to_lattice(g);
        if (proj.n != 2 || proj.edges.size() != 1 || proj.edges[0].c != 2.0)
            out.fail("parallel projected edges did not accumulate to 2");
    }

    // pooled bond conductances of projected graphs against the 1/n envelope
    constexpr int kReps = 8;
    ModelParams p;
    p.d = 2;
    p.beta = 1.0;
    p.gamma = 0.3;
    p.delta = 3.0;
    p.kernel = Kernel::Pa;
    p.profile = Profile::Polynomial;
    p.window = Window{64.0, Geometry::FreeBox};
    ElectricalNetwork pool;
    for (int rep = 1; rep <= kReps; ++rep) {
        p.seed = rep;
        const MarkedPointSet pts = sample_points(p, p.seed);
        const ElectricalNetwork proj =
            project_to_lattice(sample_graph(pts, p, SampleMethod::Cell, p.seed));
        const std::uint32_t off = pool.n;
        pool.n += proj.n;
        for (const CEdge& e : proj.edges)
            pool.edges.push_back({e.u + off, e.v + off, e.c});
    }
    std::vector<double> cs;
    cs.reserve(pool.edges.size());
    for (const CEdge& e : pool.edges) cs.push_back(e.c);
    std::sort(cs.begin(), cs.end());
    // fit the envelope scale on the small-n quantiles, then test out to 100
    double c1 = 0.0;
    for (int n : {2, 4, 8}) {
        const std::size_t i = std::min(
            static_cast<std::size_t>(std::ceil((1.0 - 1.0 / n) * cs.size())),
            cs.size() - 1);
        c1 = std::max(c1, cs[i] / n);
    }
    const SurvivalTable tab = conductance_tail(pool, c1, 100);
    if (tab.pool < 20000)
        out.fail(fmt("bond pool too small (%g)", double(tab.pool)));
    if (tab.any_violation)
        out.fail(fmt("tail exceeds the 1/n envelope at c1=%.2f", c1));
    if (out.pass)
        out.note(fmt("%g bonds, fitted c1=%.2f, envelope holds to n=100",
                     double(tab.pool), c1));
    return out;
}

// ---------------------------------------------------------------- criterion 8

Outcome check_decay_exponent() {
    Outcome out;
    std::vector<double> grid;
    for (int i = 0; i <= 6; ++i) grid.push_back(std::pow(10.0, 1.0 + i / 3.0));

    constexpr double kMinTol = 0.1;
    double worst = 0.0;
    for (double gamma : {0.1, 0.2, 0.55, 0.75, 0.9}) {
        for (double delta : {2.6, 3.0, 3.4, 3.8, 4.2}) {
            const double excess = std::max(gamma * delta - 1.0, 0.0);
            const double want = delta - excess;
            const double got =
                kappa_exponent(Kernel::Min, gamma, delta, 2, grid).limit;
            worst = std::max(worst, std::fabs(got - want));
            if (std::fabs(got - want) > kMinTol)
                out.fail(fmt("min gamma %.2f delta %.1f: %.3f", gamma, delta,
                             got) +
                         fmt(" vs %.3f", want));
        }
    }

    constexpr double kTwoTol = 0.05;
    for (const auto& [gamma, delta] :
         std::vector<std::pair<double, double>>{{0.4, 3.0}, {0.25, 2.5}}) {
        const double got =
            kappa_exponent(Kernel::Pa, gamma, delta, 2, grid).limit;
        if (std::fabs(got - 2.0) > kTwoTol)
            out.fail(fmt("pa gamma %.2f: %.4f vs 2.00", gamma, got));
    }
    for (double delta : {2.5, 3.0}) {
        const double got =
            kappa_exponent(Kernel::Plain, 0.0, delta, 2, grid).limit;
        if (std::fabs(got - delta) > kTwoTol)
            out.fail(fmt("plain delta %.1f: %.4f", delta, got));
    }
    if (out.pass)
        out.note(fmt("25-point grid worst error %.4f, pa/plain within 0.05",
                     worst));
    return out;
}

// ---------------------------------------------------------------- criterion 9

Outcome check_phase_table() {
    using P = PhaseLabel;
    struct Row {
        Kernel k;
        double gamma, delta;
        int d;
        P want;
    };
    const std::vector<Row> rows = {
        {Kernel::Pa, 0.8, 3.0, 2, P::Transient},
        {Kernel::Pa, 0.3, 1.5, 2, P::Transient},
        {Kernel::Pa, 0.3, 3.0, 2, P::RecurrentD2},
        {Kernel::Pa, 0.6, 3.0, 2, P::Unknown},
        {Kernel::Pa, 0.75, 3.0, 2, P::Boundary},
        {Kernel::Pa, 0.5, 3.0, 2, P::Boundary},
        {Kernel::Pa, 0.3, 2.0, 2, P::Boundary},
        {Kernel::Pa, 0.3, 3.0, 3, P::Unknown},
        {Kernel::Min, 0.8, 3.0, 2, P::Transient},
        {Kernel::Min, 0.5, 1.5, 2, P::Transient},
        {Kernel::Min, 0.5, 3.0, 2, P::RecurrentD2},
        {Kernel::Min, 0.7, 3.0, 2, P::Unknown},
        {Kernel::Min, 2.0 / 3.0, 3.0, 2, P::Boundary},
        {Kernel::Min, 0.4, 2.0, 2, P::Boundary},
        {Kernel::Sum, 0.8, 3.0, 2, P::Transient},
        {Kernel::Sum, 0.5, 3.0, 2, P::RecurrentD2},
        {Kernel::Sum, 0.7, 3.0, 2, P::Unknown},
        {Kernel::Sum, 0.75, 3.0, 2, P::Boundary},
        {Kernel::Prod, 0.6, 3.0, 2, P::Transient},
        {Kernel::Prod, 0.3, 1.5, 2, P::Transient},
        {Kernel::Prod, 0.3, 3.0, 2, P::RecurrentD2},
        {Kernel::Prod, 0.5, 3.0, 2, P::Boundary},
        {Kernel::Max, 0.7, 3.0, 2, P::Transient},
        {Kernel::Max, 0.5, 1.5, 1, P::Transient},
    };
    Outcome out;
    int wrong = 0;
    for (const Row& r : rows)
        if (phase_classify(r.k, r.gamma, r.delta, r.d) != r.want) ++wrong;
    if (wrong) out.fail(fmt("%g of 24 cells mislabelled", wrong));
    else out.note("all 24 cells labelled correctly");
    return out;
}

// --------------------------------------------------------------- criterion 10

struct PalmRun {
    std::vector<std::array<double, 4>> c;  // per qualifying seed
};

PalmRun palm_conductances(double gamma, double delta, double beta, int seeds) {
    const std::vector<double> radii{8.0, 16.0, 32.0, 64.0};
    ModelParams p;
    p.d = 2;
    p.beta = beta;
    p.gamma = gamma;
    p.delta = delta;
    p.kernel = Kernel::Pa;
    p.profile = Profile::Polynomial;
    p.window = Window{144.0, Geometry::FreeBox};

    PalmRun run;
    int tried = 0;
    for (std::uint64_t seed = 1; int(run.c.size()) < seeds && tried < 3 * seeds;
         ++seed) {
        ++tried;
        p.seed = seed;
        const MarkedPointSet pts = add_palm_origin(sample_points(p, seed), seed);
        const Graph g = sample_graph(pts, p, SampleMethod::Cell, seed);
        ElectricalNetwork net;
        net.n = static_cast<std::uint32_t>(g.size());
        net.edges.reserve(g.edges.size());
        for (const Edge& e : g.edges)
            net.edges.push_back({e.first, e.second, 1.0});
        const std::uint32_t palm = *g.points.palm;
        std::array<double, 4> c{};
        bool ok = true;
        for (std::size_t i = 0; i < radii.size() && ok; ++i) {
            std::vector<std::uint32_t> sinks;
            for (std::uint32_t v = 0; v < net.n; ++v) {
                const double* x = g.points.position(v);
                if (std::hypot(x[0], x[1]) >= radii[i]) sinks.push_back(v);
            }
            c[i] = effective_conductance(net, palm, sinks, 1e-8);
            ok = c[i] > 0.0;
        }
        if (ok) run.c.push_back(c);
    }
    return run;
}

Outcome check_palm_conductance_trend() {
    constexpr int kSeeds = 20;
    constexpr int kSign = 15;        // one-sided sign test, level ~0.021
    constexpr double kInc = 0.0025;  // resistance growth per radius doubling
    constexpr double kFloorFrac = 0.5;
    constexpr double kFloorAbs = 0.2;
    Outcome out;

    // slow-decay side: resistance keeps growing by a steady amount per
    // doubling, the signature of conductance falling like c / log R
    {
        const PalmRun run = palm_conductances(0.3, 3.0, 1.4, kSeeds);
        if (int(run.c.size()) < kSeeds) {
            out.fail("too few connected palm samples (slow-decay case)");
        } else {
            int mono = 0, grow = 0, steady = 0;
            for (const auto& c : run.c) {
                mono += c[0] >= c[1] && c[1] >= c[2] && c[2] >= c[3];
                const double d2 = 1.0 / c[2] - 1.0 / c[1];
                const double d3 = 1.0 / c[3] - 1.0 / c[2];
                grow += d3 >= kInc;
                steady += d2 > 0.0 && d3 > 0.0 && d3 / d2 >= 0.3 &&
                          d3 / d2 <= 2.0;
            }
            out.note(fmt("decay: mono %g/20 grow %g/20 steady %g/20",
                         double(mono), double(grow), double(steady)));
            if (mono < kSeeds) out.fail("conductance not monotone in radius");
            if (grow < kSign) out.fail("resistance growth below threshold");
            if (steady < kSign) out.fail("increment ratio outside band");
        }
    }

    // plateau sides: the resistance increments die out and the conductance
    // stays above a fixed fraction of its small-radius value
    struct Flat {
        double gamma, delta, beta;
        bool check_inc;
    };
    for (const Flat f : {Flat{0.8, 3.0, 0.4, true}, Flat{0.3, 1.5, 1.4, false}}) {
        const PalmRun run = palm_conductances(f.gamma, f.delta, f.beta, kSeeds);
        if (int(run.c.size()) < kSeeds) {
            out.fail(fmt("too few connected palm samples (gamma %.1f delta "
                         "%.1f)",
                         f.gamma, f.delta));
            continue;
        }
        int flat = 0, floor = 0;
        for (const auto& c : run.c) {
            flat += (1.0 / c[3] - 1.0 / c[2]) < kInc;
            floor += c[3] >= kFloorFrac * c[0] && c[3] >= kFloorAbs;
        }
        out.note(fmt("plateau gamma=%.1f: flat %g/20 floor %g/20", f.gamma,
                     double(flat), double(floor)));
        if (f.check_inc && flat < kSign)
            out.fail(fmt("gamma %.1f: resistance still growing", f.gamma));
        if (floor < kSign)
            out.fail(fmt("gamma %.1f: conductance dropped below floor",
                         f.gamma));
    }
    return out;
}

// --------------------------------------------------------------- criterion 11

Outcome check_coupled_monotonicity() {
    constexpr int kReplicas = 1000;
    const std::vector<double> betas{0.6, 1.0, 1.6};
    constexpr double kReach = 8.0;
    Outcome out;

    ModelParams base;
    base.d = 2;
    base.gamma = 0.5;
    base.delta = 3.0;
    base.kernel = Kernel::Min;
    base.profile = Profile::Polynomial;
    base.window = Window{20.0, Geometry::FreeBox};

    int nest_bad = 0, theta_bad = 0;
    long theta_sum = 0;
    for (int rep = 1; rep <= kReplicas; ++rep) {
        base.beta = 1.0;
        base.seed = rep;
        const MarkedPointSet pts =
            add_palm_origin(sample_points(base, rep), rep);
        std::vector<Graph> gs;
        std::vector<int> reach;
        for (double beta : betas) {
            ModelParams p = base;
            p.beta = beta;
            Graph g = sample_graph(pts, p, SampleMethod::Cell, rep);
            const ComponentPartition comp = connected_components(g);
            const std::uint32_t pc = comp.component[*g.points.palm];
            int hit = 0;
            for (std::uint32_t v = 0; v < g.size() && !hit; ++v) {
                const double* x = g.points.position(v);
                if (comp.component[v] == pc &&
                    std::hypot(x[0], x[1]) >= kReach)
                    hit = 1;
            }
            reach.push_back(hit);
            gs.push_back(std::move(g));
        }
        for (std::size_t i = 1; i < betas.size(); ++i) {
            if (!std::includes(gs[i].edges.begin(), gs[i].edges.end(),
                               gs[i - 1].edges.begin(), gs[i - 1].edges.end()))
                ++nest_bad;
            if (reach[i] < reach[i - 1]) ++theta_bad;
        }
        theta_sum += reach.back();
    }
    if (nest_bad) out.fail(fmt("%g edge-nesting violations", nest_bad));
    if (theta_bad) out.fail(fmt("%g reach-indicator drops", theta_bad));
    if (out.pass)
        out.note(fmt("0 violations over %g replicas (reach rate %.2f at top "
                     "beta)",
                     kReplicas, double(theta_sum) / kReplicas));
    return out;
}

// --------------------------------------------------------------- criterion 12

Outcome check_cropping_flags() {
    Outcome out;
    const CroppingReport deep =
        cropping_check(Kernel::Plain, 0.0, 3.0, 2, 0.1, 40, 12);
    bool deep_ok = deep.sup_converged;
    for (char c : deep.sum_converged) deep_ok = deep_ok && c;
    if (!deep_ok) out.fail("steep plain profile did not certify");

    const CroppingReport edge =
        cropping_check(Kernel::Plain, 0.0, 2.0, 2, 0.1, 40, 12);
    if (edge.sup_converged)
        out.fail("critical plain profile certified the sup term");

    const CroppingReport mk =
        cropping_check(Kernel::Min, 0.5, 3.0, 2, 0.2, 24, 12);
    bool mk_ok = mk.sup_converged;
    for (char c : mk.sum_converged) mk_ok = mk_ok && c;
    if (!mk_ok) out.fail("min kernel case did not certify");

    if (out.pass) out.note("flags set/unset exactly as expected");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--only") && i + 1 < argc)
            only = std::atoi(argv[i + 1]);
    }

    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion table[] = {
        {"profile normalization", check_profile_normalization},
        {"edge law and sampler equivalence", check_edge_law},
        {"degree tail exponent", check_degree_exponent},
        {"kernel inequalities", check_kernel_inequalities},
        {"two-hop connector frequency", check_connector_frequency},
        {"conductance solver oracle", check_conductance_solver},
        {"lattice projection and conductance tail", check_lattice_projection},
        {"decay exponent extrapolation", check_decay_exponent},
        {"phase classification table", check_phase_table},
        {"palm conductance trend", check_palm_conductance_trend},
        {"coupled edge monotonicity", check_coupled_monotonicity},
        {"cropping condition flags", check_cropping_flags},
    };

    int failures = 0, ran = 0;
    for (int i = 0; i < 12; ++i) {
        if (only && only != i + 1) continue;
        ++ran;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome res;
        try {
            res = table[i].run();
        } catch (const std::exception& e) {
            res.fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        std::printf("[%2d] %s  %-40s (%.1fs)%s%s\n", i + 1,
                    res.pass ? "PASS" : "FAIL", table[i].name, secs,
                    res.detail.empty() ? "" : "  ", res.detail.c_str());
        std::fflush(stdout);
        failures += !res.pass;
    }
    std::printf("acceptance: %d/%d criteria passed\n", ran - failures, ran);
    return failures ? 1 : 0;
}
