#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

// Adaptive Gauss-Kronrod 15(7) quadrature, in a plain variant and in a
// log-space variant. The log variant takes log f and returns log of the
// integral, so integrands spanning hundreds of orders of magnitude (the
// multi-scale mark integrals) never overflow or underflow a double.

namespace wrcm::quad {

inline double log_add(double la, double lb) {
    if (la == -std::numeric_limits<double>::infinity()) return lb;
    if (lb == -std::numeric_limits<double>::infinity()) return la;
    const double hi = std::max(la, lb);
    return hi + std::log1p(std::exp(std::min(la, lb) - hi));
}

namespace detail {

// QUADPACK 15-point Kronrod rule on [-1,1]; Gauss-7 weights sit at the odd nodes.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace detail

struct Result {
    double value = 0.0;
    double abs_err = 0.0;
    bool converged = false;
    int segments = 0;
};

struct LogResult {
    double log_value = -std::numeric_limits<double>::infinity();
    double log_abs_err = -std::numeric_limits<double>::infinity();
    bool converged = false;
    int segments = 0;
};

// One GK15 panel on [a,b]: Kronrod value and |K15 - G7| error estimate.
template <class F>
void gk15_panel(F&& f, double a, double b, double& value, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double k15 = detail::wgk[7] * f(c);
    double g7 = detail::wg[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const double fa = f(c - h * detail::xgk[i]);
        const double fb = f(c + h * detail::xgk[i]);
        k15 += detail::wgk[i] * (fa + fb);
        if (i % 2 == 1) g7 += detail::wg[i / 2] * (fa + fb);
    }
    value = k15 * h;
    err = std::fabs(k15 - g7) * h;
}

template <class F>
Result integrate(F&& f, double a, double b, double abs_tol = 1e-12,
                 double rel_tol = 1e-10, int max_segments = 2000) {
    struct Seg {
        double a, b, value, err;
        bool operator<(const Seg& o) const { return err < o.err; }
    };
    Result out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Seg> heap;
    Seg s{a, b, 0, 0};
    gk15_panel(f, a, b, s.value, s.err);
    heap.push(s);
    double total = s.value, total_err = s.err;
    int segments = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total)) &&
           segments < max_segments) {
        Seg worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push(worst);  // interval at double resolution, cannot split
            break;
        }
        Seg left{worst.a, mid, 0, 0}, right{mid, worst.b, 0, 0};
        gk15_panel(f, left.a, left.b, left.value, left.err);
        gk15_panel(f, right.a, right.b, right.value, right.err);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++segments;
    }
    out.value = total;
    out.abs_err = total_err;
    out.segments = segments;
    out.converged = total_err <= std::max(abs_tol, rel_tol * std::fabs(total));
    return out;
}

// Log-space panel: integrand given as log f (f > 0, -inf allowed where f = 0).
// Scales by the node maximum before summing, so only ratios are exponentiated.
template <class LogF>
void gk15_panel_log(LogF&& lf, double a, double b, double& log_value,
                    double& log_err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double lv[15];
    lv[0] = lf(c);
    for (int i = 0; i < 7; ++i) {
        lv[1 + 2 * i] = lf(c - h * detail::xgk[i]);
        lv[2 + 2 * i] = lf(c + h * detail::xgk[i]);
    }
    double m = lv[0];
    for (int i = 1; i < 15; ++i) m = std::max(m, lv[i]);
    if (m == -std::numeric_limits<double>::infinity()) {
        log_value = log_err = m;
        return;
    }
    double k15 = detail::wgk[7] * std::exp(lv[0] - m);
    double g7 = detail::wg[3] * std::exp(lv[0] - m);
    for (int i = 0; i < 7; ++i) {
        const double ea = std::exp(lv[1 + 2 * i] - m);
        const double eb = std::exp(lv[2 + 2 * i] - m);
        k15 += detail::wgk[i] * (ea + eb);
        if (i % 2 == 1) g7 += detail::wg[i / 2] * (ea + eb);
    }
    const double lh = std::log(h);
    log_value = k15 > 0 ? m + std::log(k15) + lh
                        : -std::numeric_limits<double>::infinity();
    const double diff = std::fabs(k15 - g7);
    log_err = diff > 0 ? m + std::log(diff) + lh
                       : -std::numeric_limits<double>::infinity();
}

template <class LogF>
LogResult integrate_log(LogF&& lf, double a, double b, double log_rel_tol,
                        int max_segments = 2000) {
    struct Seg {
        double a, b, log_value, log_err;
    };
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    LogResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::vector<Seg> segs;
    segs.reserve(64);
    Seg first{a, b, 0, 0};
    gk15_panel_log(lf, a, b, first.log_value, first.log_err);
    segs.push_back(first);
    double log_total = first.log_value, log_total_err = first.log_err;
    const auto refresh_totals = [&] {
        log_total = neg_inf;
        log_total_err = neg_inf;
        for (const Seg& s : segs) {
            log_total = log_add(log_total, s.log_value);
            log_total_err = log_add(log_total_err, s.log_err);
        }
    };
    const auto done = [&] {
        return log_total_err <= log_total + log_rel_tol || log_total_err == neg_inf;
    };
    while (!done() && static_cast<int>(segs.size()) < max_segments) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].log_err > segs[worst].log_err) worst = i;
        const Seg parent = segs[worst];
        const double mid = 0.5 * (parent.a + parent.b);
        if (mid <= parent.a || mid >= parent.b) break;  // double resolution hit
        Seg left{parent.a, mid, 0, 0}, right{mid, parent.b, 0, 0};
        gk15_panel_log(lf, left.a, left.b, left.log_value, left.log_err);
        gk15_panel_log(lf, right.a, right.b, right.log_value, right.log_err);
        segs[worst] = left;
        segs.push_back(right);
        refresh_totals();
    }
    out.log_value = log_total;
    out.log_abs_err = log_total_err;
    out.segments = static_cast<int>(segs.size());
    out.converged = done();
    return out;
}

}  // namespace wrcm::quad
