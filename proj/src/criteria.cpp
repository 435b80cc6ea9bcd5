#include "wrcm/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wrcm/quadrature.hpp"

namespace wrcm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log g(e^u, e^v) for log-marks u, v <= 0
double log_g(Kernel kernel, double gamma, double beta, int d, double u, double v) {
    const double lb = std::log(beta);
    switch (kernel) {
        case Kernel::Plain:
            return -lb;
        case Kernel::Sum: {
            const double a = -gamma * u / d, b = -gamma * v / d;
            const double m = std::max(a, b);
            return -d * (m + std::log(std::exp(a - m) + std::exp(b - m))) - lb;
        }
        case Kernel::Min:
            return gamma * std::min(u, v) - lb;
        case Kernel::Max:
            return (1.0 + gamma) * std::max(u, v) - lb;
        case Kernel::Prod:
            return gamma * (u + v) - lb;
        case Kernel::Pa:
            return (1.0 - gamma) * std::max(u, v) + gamma * std::min(u, v) - lb;
    }
    return 0.0;
}

// log rho(r) for the polynomial profile, r given as log r (may be -inf)
double log_rho_poly(double log_r, double delta, double log_b) {
    return std::min(log_b, -delta * log_r);
}

void check_kernel_params(Kernel kernel, double gamma, double delta, int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("Error: d must be 1, 2 or 3");
    if (!(delta > 1.0)) throw std::invalid_argument("Error: delta must exceed 1");
    if (kernel == Kernel::Max) {
        if (!(gamma > 0.0))
            throw std::invalid_argument("Error: gamma must be positive");
    } else if (kernel != Kernel::Plain) {
        if (!(gamma > 0.0 && gamma < 1.0))
            throw std::invalid_argument("Error: gamma must lie in (0,1)");
    }
}

struct MarkIntegral {
    double log_value = kNegInf;
    bool converged = true;
};

// log of the integral of rho(g(s,t) * A) over [exp(u_lo), exp(u_hi)] x
// [exp(v_lo), exp(v_hi)] in the marks, A passed as log A.
//
// The integrand has kinks where rho switches from the flat branch b to the
// power branch and where max/min swap sides. A narrow power-law sliver can
// slip between the nodes of an adaptive panel without ever raising the error
// estimate, so every piece boundary is located in closed form up front and
// the quadrature only ever sees smooth exponential pieces.
MarkIntegral log_mark_integral(Kernel kernel, double gamma, double delta,
                               double beta, int d, double log_a, double u_lo,
                               double u_hi, double v_lo, double v_hi,
                               double log_rel_tol) {
    MarkIntegral out;
    if (!(u_lo < u_hi) || !(v_lo < v_hi)) return out;
    const ProfileConstants pc = profile_constants(Profile::Polynomial, delta, d);
    const double log_b = std::log(pc.b);
    // kernel core w = log g + log beta; the profile switches branch at w_star
    const double w_star = -log_b / delta - log_a + std::log(beta);

    // mark where the sum-kernel core crosses w_star, given the other log-mark
    const auto sum_cross = [&](double other) -> double {
        const double e = (w_star - gamma * other) / d;
        if (!(e < 0.0)) return kNegInf;  // core stays below w_star
        return w_star / gamma - (d / gamma) * std::log1p(-std::exp(e));
    };

    const auto collect = [](double lo, double hi, std::initializer_list<double> cands,
                            std::vector<double>& cuts) {
        cuts.clear();
        cuts.push_back(lo);
        for (double c : cands)
            if (c > lo && c < hi) cuts.push_back(c);
        cuts.push_back(hi);
        std::sort(cuts.begin(), cuts.end());
    };

    // v-cuts at fixed u: the diagonal plus the branch crossing of each piece
    const auto v_breaks = [&](double u, std::vector<double>& cuts) {
        switch (kernel) {
            case Kernel::Plain:
                collect(v_lo, v_hi, {}, cuts);
                break;
            case Kernel::Min:
                collect(v_lo, v_hi, {u, w_star / gamma}, cuts);
                break;
            case Kernel::Max:
                collect(v_lo, v_hi, {u, w_star / (1.0 + gamma)}, cuts);
                break;
            case Kernel::Prod:
                collect(v_lo, v_hi, {w_star / gamma - u}, cuts);
                break;
            case Kernel::Pa:
                collect(v_lo, v_hi,
                        {u, (w_star - (1.0 - gamma) * u) / gamma,
                         (w_star - gamma * u) / (1.0 - gamma)},
                        cuts);
                break;
            case Kernel::Sum:
                collect(v_lo, v_hi, {u, sum_cross(u)}, cuts);
                break;
        }
    };

    // u-cuts: wherever a v-cut collides with the v-bounds or the diagonal
    std::vector<double> u_cuts;
    switch (kernel) {
        case Kernel::Plain:
            collect(u_lo, u_hi, {}, u_cuts);
            break;
        case Kernel::Min:
            collect(u_lo, u_hi, {w_star / gamma}, u_cuts);
            break;
        case Kernel::Max:
            collect(u_lo, u_hi, {w_star / (1.0 + gamma)}, u_cuts);
            break;
        case Kernel::Prod:
            collect(u_lo, u_hi, {w_star / gamma - v_lo, w_star / gamma - v_hi},
                    u_cuts);
            break;
        case Kernel::Pa:
            collect(u_lo, u_hi,
                    {w_star, (w_star - gamma * v_lo) / (1.0 - gamma),
                     (w_star - gamma * v_hi) / (1.0 - gamma),
                     (w_star - (1.0 - gamma) * v_lo) / gamma,
                     (w_star - (1.0 - gamma) * v_hi) / gamma},
                    u_cuts);
            break;
        case Kernel::Sum:
            collect(u_lo, u_hi, {w_star / gamma, sum_cross(v_lo), sum_cross(v_hi)},
                    u_cuts);
            break;
    }

    bool ok = true;
    std::vector<double> v_cuts;
    const auto outer = [&](double u) {
        const auto inner = [&](double v) {
            return v + log_rho_poly(log_g(kernel, gamma, beta, d, u, v) + log_a,
                                    delta, log_b);
        };
        v_breaks(u, v_cuts);
        double log_inner = kNegInf;
        for (std::size_t i = 0; i + 1 < v_cuts.size(); ++i) {
            const quad::LogResult r =
                quad::integrate_log(inner, v_cuts[i], v_cuts[i + 1], log_rel_tol);
            ok = ok && r.converged;
            log_inner = quad::log_add(log_inner, r.log_value);
        }
        return u + log_inner;
    };
    double log_total = kNegInf;
    for (std::size_t i = 0; i + 1 < u_cuts.size(); ++i) {
        const quad::LogResult r =
            quad::integrate_log(outer, u_cuts[i], u_cuts[i + 1], log_rel_tol);
        ok = ok && r.converged;
        log_total = quad::log_add(log_total, r.log_value);
    }
    out.log_value = log_total;
    out.converged = ok;
    return out;
}

}  // namespace

ScaleSequence scale_sequence(std::uint32_t L) {
    if (L < 1 || L > 100)
        throw std::invalid_argument("Error: scale count out of range");
    ScaleSequence out;
    double n = 1.0, log_n = 0.0;
    for (std::uint32_t l = 1; l <= L; ++l) {
        n *= 2.0 * l - 1.0;
        log_n += std::log(2.0 * l - 1.0);
        out.n.push_back(n);
        out.log_n.push_back(log_n);
    }
    return out;
}

double pair_connection_prob(Kernel kernel, double gamma, double delta, double beta,
                            int d, double r) {
    check_kernel_params(kernel, gamma, delta, d);
    if (!(beta > 0.0)) throw std::invalid_argument("Error: beta must be positive");
    if (!(r > 0.0)) throw std::invalid_argument("Error: distance must be positive");
    // marks below e^-80 contribute less than e^-80 in total, far below the
    // 1e-10 absolute tolerance
    const double cutoff = -80.0;
    const MarkIntegral mi =
        log_mark_integral(kernel, gamma, delta, beta, d, d * std::log(r), cutoff,
                          0.0, cutoff, 0.0, std::log(1e-12));
    if (!mi.converged)
        throw std::runtime_error("Error: connection probability failed to converge");
    return std::exp(mi.log_value);
}

KappaResult kappa_exponent(Kernel kernel, double gamma, double delta, int d,
                           const std::vector<double>& n_grid) {
    check_kernel_params(kernel, gamma, delta, d);
    if (n_grid.size() < 3)
        throw std::invalid_argument("Error: need at least three grid points");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (!(n_grid[i] > 1.0))
            throw std::invalid_argument("Error: grid values must exceed 1");
        if (i > 0 && !(n_grid[i] > n_grid[i - 1]))
            throw std::invalid_argument("Error: grid must be increasing");
    }
    KappaResult out;
    for (double n : n_grid) {
        const double lo = -d * std::log(n);
        const MarkIntegral mi = log_mark_integral(kernel, gamma, delta, 1.0, d,
                                                  -lo, lo, 0.0, lo, 0.0,
                                                  std::log(1e-9));
        if (!mi.converged)
            throw std::runtime_error("Error: kappa integral failed to converge");
        out.n.push_back(n);
        out.log_i.push_back(mi.log_value);
        out.exponent.push_back(-mi.log_value / (d * std::log(n)));
    }
    // slope of -log I against d log n over the top half of the grid
    const std::size_t from = n_grid.size() / 2;
    double sx = 0.0, sy = 0.0;
    const std::size_t cnt = n_grid.size() - from;
    for (std::size_t i = from; i < n_grid.size(); ++i) {
        sx += d * std::log(out.n[i]);
        sy += -out.log_i[i];
    }
    const double mx = sx / cnt, my = sy / cnt;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = from; i < n_grid.size(); ++i) {
        const double dx = d * std::log(out.n[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (-out.log_i[i] - my);
    }
    out.limit = sxy / sxx;
    return out;
}

GammaCondition gamma_condition(Kernel kernel, double gamma) {
    if (kernel == Kernel::Max) {
        if (!(gamma > 0.0))
            throw std::invalid_argument("Error: gamma must be positive");
    } else if (kernel != Kernel::Plain) {
        if (!(gamma > 0.0 && gamma < 1.0))
            throw std::invalid_argument("Error: gamma must lie in (0,1)");
    }
    GammaCondition out;
    switch (kernel) {
        case Kernel::Plain: out.limsup = 0.0; break;
        case Kernel::Sum:
        case Kernel::Min: out.limsup = gamma; break;
        case Kernel::Prod: out.limsup = 2.0 * gamma; break;
        case Kernel::Pa: out.limsup = 1.0; break;
        case Kernel::Max: out.limsup = 1.0 + gamma; break;
    }
    out.pass = out.limsup < 1.0;
    return out;
}

CroppingReport cropping_check(Kernel kernel, double gamma, double delta, int d,
                              double eps, std::uint32_t L, std::uint32_t K) {
    check_kernel_params(kernel, gamma, delta, d);
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("Error: eps must lie in (0,1)");
    if (L < 2 || L > 40 || K < 2 || K > 40)
        throw std::invalid_argument("Error: grid bounds out of range");

    const ScaleSequence sc = scale_sequence(L + K + 1);
    // log r(l,k) with b(v) = v^-eps and boxes of scale n_{l+k}
    const auto log_r = [&](std::uint32_t l, std::uint32_t k) {
        return -d * (1.0 + eps) * sc.log_n[l + k - 1];
    };
    const double log_tol = std::log(1e-7);
    const double beta = 1.0;

    CroppingReport out;
    out.eps = eps;
    out.L = L;
    out.K = K;

    // sup over the comparison terms (n_l k)^{2d} * J(l,k); the k = 1 term
    // compares boxes to themselves and is excluded from the grid
    std::vector<std::vector<double>> log_k_term(L + 1);
    double log_sup = kNegInf;
    for (std::uint32_t l = 1; l <= L; ++l) {
        log_k_term[l].assign(K + 1, kNegInf);
        for (std::uint32_t k = 2; k <= K; ++k) {
            const double log_a =
                d * (std::log(k - 1.0) + sc.log_n[l - 1] - 0.5 * std::log(double(d)));
            const MarkIntegral mi =
                log_mark_integral(kernel, gamma, delta, beta, d, log_a, log_r(l, 0),
                                  0.0, log_r(l, 0), 0.0, log_tol);
            log_k_term[l][k] =
                2.0 * d * (sc.log_n[l - 1] + std::log(double(k))) + mi.log_value;
            log_sup = std::max(log_sup, log_k_term[l][k]);
        }
    }
    out.log_sup_term = log_sup;
    double row_tail = kNegInf;
    for (std::uint32_t k = 2; k <= K; ++k)
        row_tail = std::max(row_tail, log_k_term[L][k]);
    out.sup_tail = std::exp(row_tail);
    bool k_monotone = true;
    for (std::uint32_t l = 1; l <= L; ++l)
        if (log_k_term[l][K] > log_k_term[l][K - 1] + 1e-9) k_monotone = false;
    out.sup_converged = k_monotone && out.sup_tail < 1e-8;

    // the three series; all accumulated in log space
    const double log_thresh = std::log(1e-8);
    std::vector<double> log_sums(3, kNegInf), log_tails(3, kNegInf);
    const auto accumulate = [](double& acc, double term) {
        const double m = std::max(acc, term);
        if (m == kNegInf) return;
        acc = m + std::log(std::exp(acc - m) + std::exp(term - m));
    };
    for (std::uint32_t l = 1; l <= L; ++l) {
        const double log_nl = sc.log_n[l - 1];
        const double t1 = d * std::log(double(l)) - eps * d * log_nl;
        accumulate(log_sums[0], t1);
        log_tails[0] = t1;

        const MarkIntegral j2 =
            log_mark_integral(kernel, gamma, delta, beta, d, d * log_nl, log_r(l, 0),
                              0.0, log_r(l, 1), log_r(l, 0), log_tol);
        const double t2 = 2.0 * d * std::log(double(l)) + d * log_nl +
                          d * sc.log_n[l] + j2.log_value;
        accumulate(log_sums[1], t2);
        log_tails[1] = t2;

        double t3 = kNegInf;
        for (std::uint32_t k = 1; k <= K; ++k) {
            const double log_a = d * (std::log(double(l + k)) + sc.log_n[l + k - 1]);
            const MarkIntegral j3 = log_mark_integral(kernel, gamma, delta, beta, d,
                                                      log_a, log_r(l, 0), 0.0,
                                                      log_r(l, k + 1), log_r(l, k),
                                                      log_tol);
            accumulate(t3, d * std::log(double(l + k)) + d * sc.log_n[l + k] +
                               j3.log_value);
        }
        t3 += d * std::log(double(l)) + d * log_nl;
        accumulate(log_sums[2], t3);
        log_tails[2] = t3;
    }
    for (int i = 0; i < 3; ++i) {
        out.sums.push_back(std::exp(log_sums[i]));
        out.tails.push_back(std::exp(log_tails[i]));
        out.sum_converged.push_back(log_tails[i] < log_thresh);
    }
    return out;
}

std::string to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::Transient: return "Transient";
        case PhaseLabel::RecurrentD2: return "RecurrentD2";
        case PhaseLabel::Unknown: return "Unknown";
        case PhaseLabel::Boundary: return "Boundary";
    }
    return "Unknown";
}

PhaseLabel phase_classify(Kernel kernel, double gamma, double delta, int d) {
    check_kernel_params(kernel, gamma, delta, d);
    const auto near = [](double a, double b) { return std::fabs(a - b) <= 1e-9; };
    if (kernel == Kernel::Max) return PhaseLabel::Transient;
    if (near(delta, 2.0)) return PhaseLabel::Boundary;
    if (delta < 2.0) return PhaseLabel::Transient;
    const PhaseLabel recurrent = d == 2 ? PhaseLabel::RecurrentD2 : PhaseLabel::Unknown;
    switch (kernel) {
        case Kernel::Pa:
            if (near(gamma, delta / (delta + 1.0))) return PhaseLabel::Boundary;
            if (gamma > delta / (delta + 1.0)) return PhaseLabel::Transient;
            if (near(gamma, 0.5)) return PhaseLabel::Boundary;
            if (gamma < 0.5) return recurrent;
            return PhaseLabel::Unknown;
        case Kernel::Min:
        case Kernel::Sum:
            if (near(gamma, delta / (delta + 1.0))) return PhaseLabel::Boundary;
            if (gamma > delta / (delta + 1.0)) return PhaseLabel::Transient;
            if (near(gamma, (delta - 1.0) / delta)) return PhaseLabel::Boundary;
            if (gamma < (delta - 1.0) / delta) return recurrent;
            return PhaseLabel::Unknown;
        case Kernel::Prod:
            if (near(gamma, 0.5)) return PhaseLabel::Boundary;
            if (gamma > 0.5) return PhaseLabel::Transient;
            return recurrent;
        case Kernel::Plain:
            return recurrent;
        default:
            return PhaseLabel::Unknown;
    }
}

}  // namespace wrcm
