#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

// Model core: parameters, the six kernels, the two profile families and the
// pairwise connection probability phi((x,s),(y,t)) = rho(g(s,t) |x-y|^d).

namespace wrcm {

enum class Kernel { Plain, Sum, Min, Max, Prod, Pa };
enum class Profile { Indicator, Polynomial };
enum class Geometry { Torus, FreeBox };

// Finite observation window [-L/2, L/2)^d, optionally with periodic distances.
struct Window {
    double side = 1.0;
    Geometry geometry = Geometry::Torus;
};

struct MarkedVertex {
    std::vector<double> position;
    double mark = 0.5;
};

struct ModelParams {
    int d = 2;
    double beta = 1.0;
    double gamma = 0.5;
    double delta = 2.0;
    Kernel kernel = Kernel::Pa;
    Profile profile = Profile::Polynomial;
    Window window{};
    std::uint64_t seed = 0;
};

// Cutoff constants making both profile families integrate to one over R^d.
// Indicator: rho = 1 on [0,a], a = 1/kappa_d. Polynomial: rho(r) = min(b, r^-delta).
struct ProfileConstants {
    double a = 0.0;
    double b = 0.0;
};

// Volume kappa_d of the d-dimensional unit ball.
double unit_ball_volume(int d);

// Throws std::invalid_argument when a parameter is outside its legal range.
void validate(const ModelParams& params);

double kernel_eval(Kernel kind, double s, double t, double gamma, double beta, int d);

ProfileConstants profile_constants(Profile kind, double delta, int d);

double profile_eval(Profile kind, double delta, int d, double r);

// Euclidean distance under the window geometry (minimum image on the torus).
double distance(const Window& window, int d, const double* x, const double* y);

double connection_prob(const ModelParams& params, const MarkedVertex& x,
                       const MarkedVertex& y);

std::string to_string(Kernel kind);
std::string to_string(Profile kind);
std::string to_string(Geometry geometry);
Kernel kernel_from_string(const std::string& name);
Profile profile_from_string(const std::string& name);
Geometry geometry_from_string(const std::string& name);

// ---- hot-path helpers (constants precomputed by the caller) ----

// Profile value with the constants already in hand.
inline double profile_fast(Profile kind, double delta, const ProfileConstants& pc,
                           double r) {
    if (kind == Profile::Indicator) return r <= pc.a ? 1.0 : 0.0;
    if (r <= 0.0) return pc.b;
    const double tail = std::pow(r, -delta);
    return tail < pc.b ? tail : pc.b;
}

// phi for a pair at Euclidean distance dist, given marks s and t.
inline double phi_at_distance(const ModelParams& p, const ProfileConstants& pc, double s,
                              double t, double dist) {
    const double g = kernel_eval(p.kernel, s, t, p.gamma, p.beta, p.d);
    const double rd = p.d == 2 ? dist * dist
                               : (p.d == 1 ? dist : std::pow(dist, p.d));
    return profile_fast(p.profile, p.delta, pc, g * rd);
}

}  // namespace wrcm
