// polariton.hpp — dressed-mode diagonalization and branch potentials
//
// The exciton/photon block at frozen mirror position x is diagonalized by a
// rotation through theta(x); the resulting dressed frequencies define the
// Born-Oppenheimer potential of each occupation branch (n_A, n_B).

#pragma once

#include "optomech/params.hpp"

namespace optomech {

struct PolaritonBasis {
    double theta{0.0};     // dressing angle, in [0, pi]
    double omega_a{0.0};   // lower dressed frequency
    double omega_b{0.0};   // upper dressed frequency
    double x_eval{0.0};    // mirror displacement the basis was evaluated at
};

// theta = atan2(2G, omega_0 - omega_c - eta x). The two-argument form keeps
// theta continuous through the detuning sign change (arctan alone does not).
double mixing_angle(const SystemParams& params, double x);

// omega_{a,b} = (S -/+ ... ) with S = omega_0 + omega_c + eta x and
// split sqrt((omega_0 - omega_c - eta x)^2 + 4 G^2).
PolaritonBasis polariton_frequencies(const SystemParams& params, double x);

// V_n(x) = n_a omega_a(x) + n_b omega_b(x), evaluated without expansion.
double bo_potential_exact(const SystemParams& params, const ModeIndex& n, double x);

// Second-order expansion of V_n about x = 0. The quadratic coefficient is
// written with G^2 (= N |g|^2 under uniform coupling).
double bo_potential_taylor(const SystemParams& params, const ModeIndex& n, double x);

} // namespace optomech
