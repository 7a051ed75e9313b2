#include "optomech/polariton.hpp"

#include <cmath>

namespace optomech {

namespace {

// Splitting sqrt((omega_0 - omega_c - eta x)^2 + 4 G^2) at position x.
double dressed_split(const SystemParams& p, double x) {
    return std::hypot(p.detuning() - p.eta * x, 2.0 * p.g_total);
}

} // namespace

double mixing_angle(const SystemParams& params, double x) {
    params.validate();
    return std::atan2(2.0 * params.g_total, params.detuning() - params.eta * x);
}

PolaritonBasis polariton_frequencies(const SystemParams& params, double x) {
    params.validate();
    const double trace = params.omega_0 + params.omega_c + params.eta * x;
    const double split = dressed_split(params, x);
    PolaritonBasis basis;
    basis.theta   = mixing_angle(params, x);
    basis.omega_a = 0.5 * (trace - split);
    basis.omega_b = 0.5 * (trace + split);
    basis.x_eval  = x;
    return basis;
}

double bo_potential_exact(const SystemParams& params, const ModeIndex& n, double x) {
    params.validate();
    n.validate();
    const double trace = params.omega_0 + params.omega_c + params.eta * x;
    const double split = dressed_split(params, x);
    return 0.5 * trace * (n.n_b + n.n_a) + 0.5 * split * (n.n_b - n.n_a);
}

double bo_potential_taylor(const SystemParams& params, const ModeIndex& n, double x) {
    params.validate();
    n.validate();
    const double delta = params.detuning();
    const double split = std::hypot(delta, 2.0 * params.g_total);
    if (split == 0.0)
        throw InvalidParams("bo_potential_taylor: expansion undefined at zero splitting "
                            "(resonant and uncoupled)");
    const double sum  = n.n_b + n.n_a;
    const double diff = n.n_b - n.n_a;
    const double g2   = params.g_total * params.g_total;

    const double constant = 0.5 * (params.omega_0 + params.omega_c) * sum + 0.5 * split * diff;
    const double linear   = 0.5 * params.eta * (sum - delta * diff / split);
    const double quadratic =
        g2 * params.eta * params.eta * diff / (split * split * split);

    return constant + linear * x + quadratic * x * x;
}

} // namespace optomech
