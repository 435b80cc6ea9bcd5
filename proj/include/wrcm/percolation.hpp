#pragma once

#include <cstdint>

#include "wrcm/model.hpp"

namespace wrcm {

struct ThetaEstimate {
    double beta = 0.0;
    double radius = 0.0;
    std::uint32_t replicas = 0;
    std::uint32_t hits = 0;
    double theta_hat = 0.0;
    double ci_lo = 0.0;  // exact (Clopper-Pearson) 95% interval
    double ci_hi = 1.0;
};

struct BetaCInterval {
    double lo = 0.0;
    double hi = 0.0;
    double crossing_level = 0.5;
    std::uint32_t evaluations = 0;
};

// Fraction of replicas in which the Palm origin's component contains a vertex
// at distance >= R from the origin.
ThetaEstimate estimate_theta(const ModelParams& params, double R,
                             std::uint32_t replicas, std::uint64_t seed);

// Bisection on beta for the level crossing of theta_hat, sharing the point
// sets and the edge-mark stream across beta values (common random numbers).
BetaCInterval estimate_beta_c(const ModelParams& params, double R,
                              std::uint32_t replicas, double beta_lo,
                              double beta_hi, double tol, std::uint64_t seed,
                              double crossing_level = 0.5);

}  // namespace wrcm
