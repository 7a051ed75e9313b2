// effective.hpp — effective mirror Hamiltonian coefficients per branch
//
// On branch n the mirror sees H_n = (omega_m + 2a) c^dag c + a (c^2 + c^dag^2)
// + b (c + c^dag) + g with coefficients (a, b, g) = (alpha_n, beta_n, gamma_n)
// fixed by the polariton occupations. Everything downstream (pseudo-frequency,
// displaced frame, Bogoliubov squeeze, regime label) derives from them.

#pragma once

#include <complex>

#include "optomech/params.hpp"

namespace optomech {

// Default relative width of the critical band |omega_m + 4 alpha| <= tol * omega_m.
inline constexpr double default_critical_tol = 1e-12;

// Construct through build / from_parts / from_overrides; the factories keep
// the derived quantities below in sync with alpha, beta, gamma.
class EffectiveCoeffs {
  public:
    double alpha{0.0};
    double beta{0.0};
    double gamma{0.0};
    std::complex<double> pseudo_freq{0.0, 0.0};  // sqrt(omega_m (omega_m + 4 alpha))
    Regime regime{Regime::Oscillatory};

    // d_n = beta / (omega_m + 4 alpha); throws DegenerateFrequency at criticality.
    double displacement() const;

    // Constant of the Bogoliubov-diagonalized branch Hamiltonian,
    // zeta = -(sqrt(omega_m) - sqrt(omega_m + 4 alpha))^2 / 4
    //        - beta^2 / (omega_m + 4 alpha) + gamma.
    // Exact in the oscillatory regime; in the hyperbolic regime the first term
    // is continued through the complex square root and its real part is kept.
    // Throws DegenerateFrequency at criticality.
    double zeta() const;

    // omega_m + 4 alpha, the quantity whose sign selects the regime.
    double stiffness() const { return stiffness_; }

    static EffectiveCoeffs build(const SystemParams& params, const ModeIndex& n,
                                 double tol_crit = default_critical_tol);

    // Direct coefficients with all derived quantities (displacement, zeta,
    // pseudo-frequency, regime) kept consistent.
    static EffectiveCoeffs from_parts(const SystemParams& params, double alpha, double beta,
                                      double gamma, double tol_crit = default_critical_tol);

    // Figure-reproduction path: alpha and beta given directly (the quadratic
    // and linear coefficients themselves), gamma = 0.
    static EffectiveCoeffs from_overrides(const SystemParams& params, double alpha,
                                          double beta, double tol_crit = default_critical_tol);

  private:
    double stiffness_{0.0};
    double displacement_{0.0};
    double zeta_{0.0};

    void finalize(double omega_m, double tol_crit);
};

struct BogoliubovCoeffs {
    double mu{1.0};
    double nu{0.0};
    double r{0.0};   // squeeze magnitude, r = arccosh(mu)
};

EffectiveCoeffs effective_coeffs(const SystemParams& params, const ModeIndex& n,
                                 double tol_crit = default_critical_tol);

Regime classify_regime(const SystemParams& params, const ModeIndex& n,
                       double tol_crit = default_critical_tol);

// Occupation-difference threshold beyond which a branch turns hyperbolic:
// (n_a - n_b) > m omega_m^2 ((omega_0-omega_c)^2 + 4G^2)^(3/2) / (2 G^2 eta^2).
// Returns +inf when G or eta vanishes.
double hyperbolic_threshold(const SystemParams& params);

// Quarter-power Bogoliubov coefficients of the branch; requires the
// oscillatory regime (throws HyperbolicRegime otherwise).
BogoliubovCoeffs bogoliubov(const SystemParams& params, const ModeIndex& n,
                            double tol_crit = default_critical_tol);
BogoliubovCoeffs bogoliubov(double omega_m, const EffectiveCoeffs& coeffs);

} // namespace optomech
