// params.hpp — physical parameter set, branch index and regime labels

#pragma once

#include <cmath>
#include <string>

#include "optomech/errors.hpp"

namespace optomech {

// All frequencies are angular (rad/s). In scaled units set mass = omega_m = 1.
// g_total is the collective coupling G; with uniform per-atom coupling g the
// relation G^2 = N |g|^2 holds, so only G enters the formulas and n_atoms is
// informational.
struct SystemParams {
    double omega_0{1.0};   // atomic transition frequency
    double omega_c{1.0};   // cavity mode frequency
    double omega_m{1.0};   // mirror oscillation frequency
    double mass{1.0};      // mirror effective mass
    double eta{0.0};       // radiation-pressure coupling, rad/s per unit displacement
    double g_total{0.0};   // collective atom-cavity coupling G
    long   n_atoms{1};

    void validate() const {
        if (!(omega_0 > 0.0) || !std::isfinite(omega_0))
            throw InvalidParams("SystemParams: omega_0 must be positive");
        if (!(omega_c > 0.0) || !std::isfinite(omega_c))
            throw InvalidParams("SystemParams: omega_c must be positive");
        if (!(omega_m > 0.0) || !std::isfinite(omega_m))
            throw InvalidParams("SystemParams: omega_m must be positive");
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw InvalidParams("SystemParams: mass must be positive");
        if (!(g_total >= 0.0) || !std::isfinite(g_total))
            throw InvalidParams("SystemParams: g_total must be nonnegative");
        if (!std::isfinite(eta))
            throw InvalidParams("SystemParams: eta must be finite");
        if (n_atoms < 1)
            throw InvalidParams("SystemParams: n_atoms must be >= 1");
    }

    // Bare detuning Omega_0 - Omega_C.
    double detuning() const { return omega_0 - omega_c; }
};

// Polariton occupation pair (n_A, n_B) labeling a Born-Oppenheimer branch.
struct ModeIndex {
    int n_a{0};
    int n_b{0};

    void validate() const {
        if (n_a < 0 || n_b < 0)
            throw InvalidParams("ModeIndex: occupations must be nonnegative");
    }

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

enum class Regime { Oscillatory, Hyperbolic, Critical };

inline std::string to_string(Regime r) {
    switch (r) {
        case Regime::Oscillatory: return "oscillatory";
        case Regime::Hyperbolic:  return "hyperbolic";
        case Regime::Critical:    return "critical";
    }
    return "?";
}

} // namespace optomech
