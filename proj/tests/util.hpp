#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wrcm/electrical.hpp"
#include "wrcm/sampler.hpp"

namespace testutil {

// One-sample Kolmogorov-Smirnov statistic against U(0,1).
inline double ks_uniform(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        d = std::max(d, std::max((i + 1) / n - xs[i], xs[i] - i / n));
    }
    return d;
}

// Direct-solve effective conductance for small networks: assemble the full
// Laplacian, pin the source at potential 1 and the sinks at 0, eliminate with
// partial pivoting, and sum the current leaving the source. Assumes the
// source can reach a sink (the generators below keep networks connected).
inline double dense_conductance(const wrcm::ElectricalNetwork& net,
                                std::uint32_t source,
                                const std::vector<std::uint32_t>& sinks) {
    const std::size_t n = net.n;
    std::vector<char> fixed(n, 0);
    std::vector<double> pot(n, 0.0);
    fixed[source] = 1;
    pot[source] = 1.0;
    for (auto s : sinks) fixed[s] = 1;

    std::vector<int> idx(n, -1);
    int m = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (!fixed[v]) idx[v] = m++;

    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0), rhs(m, 0.0);
    for (const auto& e : net.edges) {
        const int iu = idx[e.u], iv = idx[e.v];
        if (iu >= 0) a[static_cast<std::size_t>(iu) * m + iu] += e.c;
        if (iv >= 0) a[static_cast<std::size_t>(iv) * m + iv] += e.c;
        if (iu >= 0 && iv >= 0) {
            a[static_cast<std::size_t>(iu) * m + iv] -= e.c;
            a[static_cast<std::size_t>(iv) * m + iu] -= e.c;
        } else if (iu >= 0) {
            rhs[iu] += e.c * pot[e.v];
        } else if (iv >= 0) {
            rhs[iv] += e.c * pot[e.u];
        }
    }

    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::fabs(a[static_cast<std::size_t>(r) * m + col]) >
                std::fabs(a[static_cast<std::size_t>(piv) * m + col]))
                piv = r;
        if (piv != col) {
            for (int c = 0; c < m; ++c)
                std::swap(a[static_cast<std::size_t>(col) * m + c],
                          a[static_cast<std::size_t>(piv) * m + c]);
            std::swap(rhs[col], rhs[piv]);
        }
        const double p = a[static_cast<std::size_t>(col) * m + col];
        if (std::fabs(p) < 1e-14) throw std::runtime_error("singular oracle system");
        for (int r = col + 1; r < m; ++r) {
            const double f = a[static_cast<std::size_t>(r) * m + col] / p;
            if (f == 0.0) continue;
            for (int c = col; c < m; ++c)
                a[static_cast<std::size_t>(r) * m + c] -=
                    f * a[static_cast<std::size_t>(col) * m + c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(m, 0.0);
    for (int r = m - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < m; ++c)
            s -= a[static_cast<std::size_t>(r) * m + c] * x[c];
        x[r] = s / a[static_cast<std::size_t>(r) * m + r];
    }
    for (std::size_t v = 0; v < n; ++v)
        if (idx[v] >= 0) pot[v] = x[idx[v]];

    double c_eff = 0.0;
    for (const auto& e : net.edges) {
        if (e.u == source) c_eff += e.c * (1.0 - pot[e.v]);
        if (e.v == source) c_eff += e.c * (1.0 - pot[e.u]);
    }
    return c_eff;
}

// Hand-built graph over explicit positions, marks and edges.
inline wrcm::Graph build_graph(int d, double side,
                               const std::vector<std::vector<double>>& pos,
                               const std::vector<double>& marks,
                               std::vector<wrcm::Edge> edges,
                               wrcm::Geometry geom = wrcm::Geometry::FreeBox) {
    wrcm::MarkedPointSet pts;
    pts.d = d;
    pts.window = wrcm::Window{side, geom};
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (int k = 0; k < d; ++k) pts.pos.push_back(pos[i][k]);
        pts.mark.push_back(marks[i]);
    }
    return wrcm::make_graph(std::move(pts), std::move(edges));
}

}  // namespace testutil
