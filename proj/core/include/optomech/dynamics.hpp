// dynamics.hpp — closed-form branch evolution of the mirror
//
// Starting from the mirror vacuum, each branch n drives a displaced
// squeezed-coherent trajectory. This module evaluates the coherent amplitude,
// complex branch overlaps, Loschmidt echo, ground-state fidelity, the exact
// Heisenberg propagator and the position-quadrature variance. The hyperbolic
// regime is reached by analytic continuation through the complex
// pseudo-frequency; there is no separate code path.

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "optomech/effective.hpp"
#include "optomech/params.hpp"

namespace optomech {

using Complex = std::complex<double>;

// Displaced-squeezed-coherent description of the mirror subvector on a branch.
struct MirrorState {
    Complex amplitude{0.0, 0.0};     // coherent displacement, mode-quanta units
    Complex squeeze{0.0, 0.0};       // r_n(t) = r_n exp(-i Omega_{M,n} t)
    double frame_displacement{0.0};  // d_n of the displaced frame
    ModeIndex branch{};
    double time{0.0};
};

struct EchoEvaluation {
    double value{1.0};                      // L_{n,m}(t), in [0,1]
    Complex omega_diff{0.0, 0.0};           // (Omega_{M,n} - Omega_{M,m}) / 2
    std::pair<ModeIndex, ModeIndex> branch_pair{};
    double time{0.0};
};

// Superposition sum_n lambda_n |n> x |phi(0)>; weights must be normalized.
struct BranchEnsemble {
    std::vector<std::pair<ModeIndex, Complex>> entries;

    void validate(double tol = 1e-12) const;
};

// c(t) = u c(0) + v c^dag(0) + w
struct HeisenbergPropagator {
    Complex u{1.0, 0.0};
    Complex v{0.0, 0.0};
    Complex w{0.0, 0.0};
    ModeIndex branch{};
    double time{0.0};
};

// ------------------------------- per-branch ----------------------------------

// d_n (exp(-i Omega_{M,n} t) - 1); grows exponentially on hyperbolic branches.
Complex coherent_amplitude(const SystemParams& params, const ModeIndex& n, double t);
Complex coherent_amplitude(const EffectiveCoeffs& coeffs, double t);

MirrorState mirror_state(const SystemParams& params, const ModeIndex& n, double t);

HeisenbergPropagator heisenberg_propagator(const SystemParams& params, const ModeIndex& n,
                                           double t);
HeisenbergPropagator heisenberg_propagator(const SystemParams& params,
                                           const EffectiveCoeffs& coeffs, double t);

// <Delta x^2>(t) = |u + conj(v)|^2 / (2 m omega_m) from the propagator; exact
// for the quadratic branch Hamiltonian, vacuum initial state.
double quadrature_variance(const SystemParams& params, const ModeIndex& n, double t);
double quadrature_variance(const SystemParams& params, const EffectiveCoeffs& coeffs, double t);

// Literal transcription of the printed-variant variance expression (report-only;
// its t = 0 value is 4x the vacuum variance). Uses |Omega_{M,n}|.
double quadrature_variance_printed(const SystemParams& params, const ModeIndex& n, double t);
double quadrature_variance_printed(const SystemParams& params, const EffectiveCoeffs& coeffs,
                                   double t);

// ------------------------------- branch pairs --------------------------------

// <phi_n(t)|phi_m(t)> including the dynamical and displacement phases;
// |branch_overlap| == loschmidt_echo identically.
Complex branch_overlap(const SystemParams& params, const ModeIndex& n, const ModeIndex& m,
                       double t);
Complex branch_overlap(const EffectiveCoeffs& cn, const EffectiveCoeffs& cm, double t);

// L_{n,m}(t) = exp(-|alpha_n(t) - alpha_m(t)|^2 / 2)
double loschmidt_echo(const SystemParams& params, const ModeIndex& n, const ModeIndex& m,
                      double t);
double loschmidt_echo(const EffectiveCoeffs& cn, const EffectiveCoeffs& cm, double t);

// Published echo expression with cross-term coefficient 1 (report-only; it
// violates L_{n,n} = 1 at generic t).
double loschmidt_echo_printed(const SystemParams& params, const ModeIndex& n, const ModeIndex& m,
                              double t);
double loschmidt_echo_printed(const EffectiveCoeffs& cn, const EffectiveCoeffs& cm, double t);

EchoEvaluation echo_evaluation(const SystemParams& params, const ModeIndex& n, const ModeIndex& m,
                               double t);

// F_{n,m} = exp(-(d_n - d_m)^2 / 2); both branches must be oscillatory.
double fidelity(const SystemParams& params, const ModeIndex& n, const ModeIndex& m);
double fidelity(const EffectiveCoeffs& cn, const EffectiveCoeffs& cm);

struct FidelityOracleOptions {
    int start_cutoff{16};
    double tol{1e-10};
    int max_cutoff{2048};
};

// |<ground_n|ground_m>| from Fock-space ground states at converged cutoff;
// includes the squeeze-mismatch prefactor the closed form drops.
double fidelity_exact(const SystemParams& params, const ModeIndex& n, const ModeIndex& m,
                      const FidelityOracleOptions& options = {});
double fidelity_exact(const SystemParams& params, const EffectiveCoeffs& cn,
                      const EffectiveCoeffs& cm, const FidelityOracleOptions& options = {});

// ------------------------------- ensembles -----------------------------------

// Tr(rho_mirror^2) = sum_{n,m} |l_n|^2 |l_m|^2 L_{n,m}(t)^2; 1 means the
// mirror is unentangled from the polaritons.
double branch_purity(const SystemParams& params, const BranchEnsemble& ensemble, double t);

} // namespace optomech
