#pragma once

#include <cstdint>
#include <vector>

#include "wrcm/sampler.hpp"

namespace wrcm {

struct ConnectorBound {
    double k_xy = 0.0;
    double k_yx = 0.0;
    double q = 0.0;
    double lower_bound = 0.0;  // 1 - exp(-q)
};

// Two-hop (common-neighbour) connection bound for two low-mark vertices under
// the min kernel: k(x,y) = s^-gamma * rho(beta^-1 t^gamma (s^(-gamma/d) + |x-y|)^d),
// q = (rho(1/beta) kappa_d / 2) * max(k_xy, k_yx).
ConnectorBound connector_bound(const MarkedVertex& x, const MarkedVertex& y,
                               const ModelParams& params);

// True iff some vertex with mark > 1/2 is adjacent to both i and j.
bool connector_exists(const Graph& graph, std::uint32_t i, std::uint32_t j);

struct OrderStatBounds {
    double exact_min_given_max = 0.0;  // (1 - a/b)^n
    double bound = 0.0;                // exp(-n a / b)
    double exact_cond = 0.0;           // x / y
};

OrderStatBounds order_stat_bounds(std::uint64_t n, double a, double b, double x,
                                  double y);

struct StageSequences {
    Kernel kernel = Kernel::Min;
    double gamma = 0.0, delta = 0.0, beta = 1.0;
    int d = 2;
    std::uint32_t n_star = 1;
    double eps = 0.0;
    double p_b = 0.0;                 // P(mark below u_1 in a stage-1 box)
    std::vector<double> u;            // mark thresholds u_n (log_u holds log u_n)
    std::vector<double> log_u;
    std::vector<double> big_c;        // C_n = p_b (n_*+n)^{2d}
    std::vector<double> big_d;        // D_n = 2 (n_*+n)^2
    std::vector<double> partial_inv_c;  // partial sums of 1/C_n
};

// First N terms of the renormalisation sequences. c1_max supplies the
// max-kernel constant left free by the closed forms; sum/pa fall back to the
// min-kernel sequences, which dominate them.
StageSequences stage_sequences(Kernel kernel, double gamma, double delta, int d,
                               double beta, std::uint32_t n_star, double eps,
                               std::uint32_t N, std::uint64_t seed,
                               double c1_max = 1.0);

enum class BoxLabel : std::uint8_t { Good = 0, Bad = 1, Irregular = 2 };

struct BoxLabeling {
    std::uint32_t l = 1;
    double n_l = 1.0;
    double threshold = 0.0;            // n_l^{-d} b(n_l^d)
    std::vector<int> coords;           // box count * d lattice coordinates
    std::vector<BoxLabel> labels;
    double bad_fraction = 0.0;
    double irregular_fraction = 0.0;
};

// Good/Bad/Irregular labels for the stage-l boxes (side n_l, centered on
// n_l * Z^d) whose full 3^d neighbourhood lies inside the window, with
// b(v) = v^{-epsilon_star}.
BoxLabeling classify_boxes(const Graph& graph, std::uint32_t l, double epsilon_star);

struct CoarseGrain {
    double box_side = 0.0;  // M
    double lambda = 0.0;
    double threshold = 0.0;          // M^{lambda d}
    std::vector<int> coords;         // site count * d
    std::vector<char> occupied;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> bonds;  // site indices
};

// Declares a site occupied when its M-box holds a cluster of size >=
// M^{lambda d}; bonds join occupied sites whose occupying clusters touch.
CoarseGrain coarse_grain(const Graph& graph, double M, double lambda);

// 1 - exp(-c_star M^{2 d lambda - delta_star d} / |v-w|_inf^{delta_star d}).
double communication_bound(double M, double lambda, double delta_star,
                           double c_star, const std::vector<int>& v,
                           const std::vector<int>& w, int d);

}  // namespace wrcm
