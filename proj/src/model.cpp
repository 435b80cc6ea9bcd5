#include "wrcm/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wrcm {

double unit_ball_volume(int d) {
    if (d < 1) throw std::invalid_argument("Error: dimension must be >= 1");
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

void validate(const ModelParams& p) {
    if (p.d < 1) throw std::invalid_argument("Error: dimension must be >= 1");
    if (!(p.beta > 0.0)) throw std::invalid_argument("Error: beta must be > 0");
    if (!(p.delta > 1.0)) throw std::invalid_argument("Error: delta must be > 1");
    if (p.kernel == Kernel::Max) {
        if (!(p.gamma > 0.0))
            throw std::invalid_argument("Error: max kernel needs gamma > 0");
    } else if (!(p.gamma >= 0.0 && p.gamma < 1.0)) {
        throw std::invalid_argument("Error: gamma must lie in [0,1)");
    }
    if (!(p.window.side > 0.0))
        throw std::invalid_argument("Error: window side must be > 0");
}

double kernel_eval(Kernel kind, double s, double t, double gamma, double beta, int d) {
    if (!(s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0))
        throw std::invalid_argument("Error: marks must lie in (0,1)");
    if (!(beta > 0.0)) throw std::invalid_argument("Error: beta must be > 0");
    if (kind == Kernel::Max) {
        if (!(gamma > 0.0))
            throw std::invalid_argument("Error: max kernel needs gamma > 0");
    } else if (!(gamma >= 0.0 && gamma <= 1.0)) {
        // the closed endpoint keeps boundary evaluations available even though
        // model sampling requires gamma < 1
        throw std::invalid_argument("Error: gamma must lie in [0,1]");
    }
    const double lo = std::min(s, t);
    const double hi = std::max(s, t);
    switch (kind) {
        case Kernel::Plain:
            return 1.0 / beta;
        case Kernel::Sum: {
            if (d < 1) throw std::invalid_argument("Error: dimension must be >= 1");
            const double root =
                std::pow(s, -gamma / d) + std::pow(t, -gamma / d);
            return std::pow(root, -static_cast<double>(d)) / beta;
        }
        case Kernel::Min:
            return std::pow(lo, gamma) / beta;
        case Kernel::Max:
            return std::pow(hi, 1.0 + gamma) / beta;
        case Kernel::Prod:
            return std::pow(s * t, gamma) / beta;
        case Kernel::Pa:
            return std::pow(hi, 1.0 - gamma) * std::pow(lo, gamma) / beta;
    }
    throw std::invalid_argument("Error: unknown kernel");
}

ProfileConstants profile_constants(Profile kind, double delta, int d) {
    if (!(delta > 1.0)) throw std::invalid_argument("Error: delta must be > 1");
    const double kappa = unit_ball_volume(d);
    ProfileConstants pc;
    if (kind == Profile::Indicator) {
        pc.a = 1.0 / kappa;
    } else {
        pc.b = std::pow((delta - 1.0) / (delta * kappa), delta / (delta - 1.0));
    }
    return pc;
}

double profile_eval(Profile kind, double delta, int d, double r) {
    if (r < 0.0) throw std::invalid_argument("Error: profile argument must be >= 0");
    return profile_fast(kind, delta, profile_constants(kind, delta, d), r);
}

double distance(const Window& window, int d, const double* x, const double* y) {
    double sq = 0.0;
    for (int k = 0; k < d; ++k) {
        double diff = std::fabs(x[k] - y[k]);
        if (window.geometry == Geometry::Torus) {
            diff = std::min(diff, window.side - diff);
        }
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

double connection_prob(const ModelParams& params, const MarkedVertex& x,
                       const MarkedVertex& y) {
    validate(params);
    if (static_cast<int>(x.position.size()) != params.d ||
        static_cast<int>(y.position.size()) != params.d)
        throw std::invalid_argument("Error: vertex dimension mismatch");
    const double dist =
        distance(params.window, params.d, x.position.data(), y.position.data());
    if (dist == 0.0)
        throw std::invalid_argument("Error: coincident positions have no pair probability");
    const ProfileConstants pc = profile_constants(params.profile, params.delta, params.d);
    return phi_at_distance(params, pc, x.mark, y.mark, dist);
}

std::string to_string(Kernel kind) {
    switch (kind) {
        case Kernel::Plain: return "plain";
        case Kernel::Sum: return "sum";
        case Kernel::Min: return "min";
        case Kernel::Max: return "max";
        case Kernel::Prod: return "prod";
        case Kernel::Pa: return "pa";
    }
    return "?";
}

std::string to_string(Profile kind) {
    return kind == Profile::Indicator ? "indicator" : "polynomial";
}

std::string to_string(Geometry geometry) {
    return geometry == Geometry::Torus ? "torus" : "box";
}

Kernel kernel_from_string(const std::string& name) {
    if (name == "plain") return Kernel::Plain;
    if (name == "sum") return Kernel::Sum;
    if (name == "min") return Kernel::Min;
    if (name == "max") return Kernel::Max;
    if (name == "prod") return Kernel::Prod;
    if (name == "pa") return Kernel::Pa;
    throw std::invalid_argument("Error: unknown kernel name '" + name + "'");
}

Profile profile_from_string(const std::string& name) {
    if (name == "indicator") return Profile::Indicator;
    if (name == "polynomial") return Profile::Polynomial;
    throw std::invalid_argument("Error: unknown profile name '" + name + "'");
}

Geometry geometry_from_string(const std::string& name) {
    if (name == "torus") return Geometry::Torus;
    if (name == "box") return Geometry::FreeBox;
    throw std::invalid_argument("Error: unknown geometry name '" + name + "'");
}

}  // namespace wrcm
