#pragma once

#include <cstdint>
#include <vector>

#include "wrcm/model.hpp"

namespace wrcm {

// Odd double factorials n_l = prod_{k<=l} (2k-1), the nested box scales.
struct ScaleSequence {
    std::vector<double> n;      // n_l, l = 1..L
    std::vector<double> log_n;  // exact to double precision via lgamma
};

ScaleSequence scale_sequence(std::uint32_t L);

// P(two vertices at distance r with independent uniform marks are linked),
// polynomial profile. Adaptive quadrature on log-transformed marks.
double pair_connection_prob(Kernel kernel, double gamma, double delta, double beta,
                            int d, double r);

struct KappaResult {
    std::vector<double> n;
    std::vector<double> log_i;     // log I(n)
    std::vector<double> exponent;  // -log I(n) / (d log n)
    double limit = 0.0;            // least-squares slope over the top half
};

// Decay exponent of I(n) = integral of rho(g(s,t) n^d) over [n^-d, 1]^2,
// evaluated at unit beta (the limit does not depend on beta).
KappaResult kappa_exponent(Kernel kernel, double gamma, double delta, int d,
                           const std::vector<double>& n_grid);

struct GammaCondition {
    double limsup = 0.0;  // of log g(s,s) / log s as s tends to 0
    bool pass = false;    // limsup < 1
};

GammaCondition gamma_condition(Kernel kernel, double gamma);

struct CroppingReport {
    double eps = 0.0;
    std::uint32_t L = 0, K = 0;
    double log_sup_term = 0.0;  // largest log K-term over the grid (k >= 2)
    double sup_tail = 0.0;      // largest term in the final grid row
    std::vector<double> sums;   // the three partial sums (linear scale)
    std::vector<double> tails;  // magnitude of each sum's last term
    bool sup_converged = false;
    std::vector<char> sum_converged;
};

// Finite-grid evaluation of the cropping conditions with b(v) = v^{-eps}:
// the sup of the comparison terms and the three series, all computed in
// log-space. A flag is set only when the tail terms have fallen below 1e-8
// within the grid.
CroppingReport cropping_check(Kernel kernel, double gamma, double delta, int d,
                              double eps, std::uint32_t L, std::uint32_t K);

enum class PhaseLabel { Transient, RecurrentD2, Unknown, Boundary };

std::string to_string(PhaseLabel label);

// The recurrence/transience phase of the kernel at (gamma, delta, d):
// Boundary exactly on the excluded threshold lines, Unknown where the phase
// is open (including recurrent-side cells away from d = 2).
PhaseLabel phase_classify(Kernel kernel, double gamma, double delta, int d);

}  // namespace wrcm
