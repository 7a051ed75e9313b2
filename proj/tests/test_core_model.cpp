// Static model quantities: dressing angle, polariton frequencies, branch
// potentials, effective coefficients, regime classification, Bogoliubov
// coefficients.

#include "doctest.h"

#include <cmath>
#include <complex>
#include <future>
#include <vector>

#include "optomech/effective.hpp"
#include "optomech/errors.hpp"
#include "optomech/fock.hpp"
#include "optomech/polariton.hpp"

#include "test_support.hpp"

using namespace optomech;

namespace {

constexpr double pi = 3.14159265358979323846;

SystemParams resonant(double g, double eta = 0.1) {
    SystemParams p;
    p.omega_0 = 10.0;
    p.omega_c = 10.0;
    p.omega_m = 1.0;
    p.mass = 1.0;
    p.eta = eta;
    p.g_total = g;
    return p;
}

} // namespace

TEST_CASE("mixing angle") {
    SUBCASE("resonance gives pi/2") {
        CHECK(mixing_angle(resonant(5.0), 0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    }
    SUBCASE("decoupled positive detuning gives 0") {
        SystemParams p = resonant(0.0);
        p.omega_0 = 11.0;
        CHECK(mixing_angle(p, 0.0) == 0.0);
    }
    SUBCASE("detuning equal to 2G gives pi/4") {
        SystemParams p = resonant(1.0, 0.0);
        p.omega_0 = 12.0;   // detuning 2 = 2G
        CHECK(mixing_angle(p, 0.0) == doctest::Approx(pi / 4).epsilon(1e-15));
    }
    SUBCASE("continuous through the detuning sign change") {
        SystemParams p = resonant(2.0, 1.0);
        double previous = mixing_angle(p, -3.0);
        for (double x = -2.9; x < 3.0; x += 0.1) {
            const double theta = mixing_angle(p, x);
            CHECK(std::abs(theta - previous) < 0.2);
            previous = theta;
        }
    }
}

TEST_CASE("polariton frequencies") {
    SUBCASE("decoupled limit returns the bare frequencies") {
        SystemParams p = resonant(0.0);
        p.omega_0 = 12.0;
        const auto basis = polariton_frequencies(p, 0.0);
        CHECK(basis.omega_a == doctest::Approx(p.omega_c).epsilon(1e-15));
        CHECK(basis.omega_b == doctest::Approx(p.omega_0).epsilon(1e-15));
    }
    SUBCASE("resonant splitting is 2G") {
        const auto basis = polariton_frequencies(resonant(3.0), 0.0);
        CHECK(basis.omega_a == doctest::Approx(10.0 - 3.0).epsilon(1e-14));
        CHECK(basis.omega_b == doctest::Approx(10.0 + 3.0).epsilon(1e-14));
    }
    SUBCASE("Omega_0 = 10, Omega_C = 8, G = 3: 9 -/+ sqrt(10)") {
        SystemParams p = resonant(3.0, 0.0);
        p.omega_0 = 10.0;
        p.omega_c = 8.0;
        const auto basis = polariton_frequencies(p, 0.0);
        CHECK(basis.omega_a == doctest::Approx(9.0 - std::sqrt(10.0)).epsilon(1e-14));
        CHECK(basis.omega_b == doctest::Approx(9.0 + std::sqrt(10.0)).epsilon(1e-14));
        // same numbers must fall out of the two-mode matrix
        const auto eig = fock::single_excitation_eigenvalues(p, 0.0);
        CHECK(eig[0] == doctest::Approx(basis.omega_a).epsilon(1e-12));
        CHECK(eig[1] == doctest::Approx(basis.omega_b).epsilon(1e-12));
    }
    SUBCASE("trace and gap identities hold on random draws") {
        testsupport::Draw draw(31);
        for (int i = 0; i < 500; ++i) {
            const auto p = draw.params();
            const double x = draw.uniform(-2.0, 2.0);
            const auto basis = polariton_frequencies(p, x);
            const double trace = p.omega_0 + p.omega_c + p.eta * x;
            const double gap2 = std::pow(p.detuning() - p.eta * x, 2)
                                + 4.0 * p.g_total * p.g_total;
            CHECK(basis.omega_a + basis.omega_b
                  == doctest::Approx(trace).epsilon(1e-10));
            CHECK(std::pow(basis.omega_b - basis.omega_a, 2)
                  == doctest::Approx(gap2).epsilon(1e-10));
            CHECK(basis.omega_b >= basis.omega_a);
        }
    }
}

TEST_CASE("BO potential, exact form") {
    SUBCASE("vacuum branch vanishes for all x") {
        for (double x : {-1.0, 0.0, 0.7, 3.0})
            CHECK(bo_potential_exact(resonant(5.0), ModeIndex{0, 0}, x) == 0.0);
    }
    SUBCASE("decoupled limit reduces to bare energies") {
        SystemParams p = resonant(0.0, 0.2);
        p.omega_0 = 15.0;
        const double x = 0.4;
        const ModeIndex n{2, 1};
        CHECK(bo_potential_exact(p, n, x)
              == doctest::Approx((p.omega_c + p.eta * x) * n.n_a + p.omega_0 * n.n_b)
                     .epsilon(1e-14));
    }
    SUBCASE("scaled set against direct evaluation and the two-mode matrix") {
        const SystemParams p = resonant(5.0, 0.1);
        const double x = 0.3;
        const double direct = 0.5 * (10.0 + 10.0 + 0.1 * 0.3)
                              + 0.5 * std::sqrt(std::pow(-0.1 * 0.3, 2) + 4.0 * 25.0);
        const double v = bo_potential_exact(p, ModeIndex{0, 1}, x);
        CHECK(v == doctest::Approx(direct).epsilon(1e-14));
        CHECK(v == doctest::Approx(fock::single_excitation_eigenvalues(p, x)[1]).epsilon(1e-12));
    }
}

TEST_CASE("BO potential, second-order expansion") {
    SUBCASE("agrees with the exact form at the expansion point") {
        testsupport::Draw draw(5);
        for (int i = 0; i < 50; ++i) {
            auto p = draw.params();
            if (p.g_total == 0.0)
                p.g_total = 1.0;
            const auto n = draw.branch();
            CHECK(bo_potential_taylor(p, n, 0.0)
                  == doctest::Approx(bo_potential_exact(p, n, 0.0)).epsilon(1e-13));
        }
    }
    SUBCASE("equal occupations leave a purely linear potential") {
        const SystemParams p = resonant(4.0, 0.7);
        const ModeIndex n{2, 2};
        const double v0 = bo_potential_taylor(p, n, 0.0);
        for (double x : {0.3, 1.1}) {
            const double curvature =
                bo_potential_taylor(p, n, x) + bo_potential_taylor(p, n, -x) - 2.0 * v0;
            CHECK(std::abs(curvature) < 1e-12);
        }
    }
    SUBCASE("remainder shrinks by ~8 when x is halved") {
        SystemParams p = resonant(2.0, 0.5);
        p.omega_0 = 12.0;   // nondegenerate: detuning 2, cubic term nonzero
        const ModeIndex n{0, 1};
        const double x = 0.1;
        const double r1 = std::abs(bo_potential_exact(p, n, x) - bo_potential_taylor(p, n, x));
        const double r2 =
            std::abs(bo_potential_exact(p, n, x / 2) - bo_potential_taylor(p, n, x / 2));
        const double ratio = r1 / r2;
        CHECK(ratio > 6.0);
        CHECK(ratio < 10.0);
    }
}

TEST_CASE("effective coefficients") {
    SUBCASE("vacuum branch has alpha = beta = gamma = 0") {
        const auto c = effective_coeffs(resonant(5.0), ModeIndex{0, 0});
        CHECK(c.alpha == 0.0);
        CHECK(c.beta == 0.0);
        CHECK(c.gamma == 0.0);
        CHECK(c.regime == Regime::Oscillatory);
    }
    SUBCASE("resonant scaled set: alpha = 1.25e-4, beta = eta/sqrt(8)") {
        const auto c = effective_coeffs(resonant(5.0, 0.1), ModeIndex{0, 1});
        CHECK(c.alpha == doctest::Approx(1.25e-4).epsilon(1e-12));
        CHECK(c.beta == doctest::Approx(0.1 / std::sqrt(8.0)).epsilon(1e-12));
    }
    SUBCASE("alpha flips sign with the occupation difference") {
        const auto plus = effective_coeffs(resonant(5.0, 0.1), ModeIndex{0, 1});
        const auto minus = effective_coeffs(resonant(5.0, 0.1), ModeIndex{1, 0});
        CHECK(minus.alpha == doctest::Approx(-plus.alpha).epsilon(1e-14));
    }
    SUBCASE("beta splits into symmetric and antisymmetric parts") {
        testsupport::Draw draw(17);
        for (int i = 0; i < 100; ++i) {
            auto p = draw.params();
            if (p.g_total < 0.1)
                p.g_total = 0.1;
            const ModeIndex n{draw.uniform_int(0, 3), draw.uniform_int(0, 3)};
            const ModeIndex swapped{n.n_b, n.n_a};
            const auto cn = effective_coeffs(p, n);
            const auto cs = effective_coeffs(p, swapped);
            CHECK(cn.alpha == doctest::Approx(-cs.alpha).epsilon(1e-12));
            const double symmetric = p.eta / std::sqrt(8.0 * p.mass * p.omega_m)
                                     * (n.n_a + n.n_b);
            CHECK(0.5 * (cn.beta + cs.beta) == doctest::Approx(symmetric).epsilon(1e-10));
        }
    }
    SUBCASE("pseudo-frequency squares back to omega_m (omega_m + 4 alpha)") {
        testsupport::Draw draw(23);
        for (int i = 0; i < 200; ++i) {
            auto p = draw.params();
            const auto c = effective_coeffs(p, draw.branch());
            const std::complex<double> target(p.omega_m * c.stiffness(), 0.0);
            CHECK(std::abs(c.pseudo_freq * c.pseudo_freq - target)
                  <= 1e-14 * std::max(1.0, std::abs(target)));
        }
    }
    SUBCASE("critical branch returns coefficients but refuses zeta/displacement") {
        const auto c = EffectiveCoeffs::from_overrides(resonant(1.0), -0.25, 0.3);
        CHECK(c.regime == Regime::Critical);
        CHECK(c.alpha == -0.25);
        CHECK(c.beta == 0.3);
        CHECK_THROWS_AS((void)c.displacement(), DegenerateFrequency);
        CHECK_THROWS_AS((void)c.zeta(), DegenerateFrequency);
    }
    SUBCASE("zero splitting is rejected") {
        SystemParams p = resonant(0.0);   // G = 0 and zero detuning
        CHECK_THROWS_AS((void)effective_coeffs(p, ModeIndex{0, 1}), InvalidParams);
    }
    SUBCASE("invalid params are rejected") {
        SystemParams p = resonant(1.0);
        p.omega_m = -1.0;
        CHECK_THROWS_AS((void)effective_coeffs(p, ModeIndex{0, 1}), InvalidParams);
    }
}

TEST_CASE("regime classification") {
    SUBCASE("equal occupations are always oscillatory") {
        testsupport::Draw draw(41);
        for (int i = 0; i < 50; ++i) {
            auto p = draw.params();
            if (p.g_total < 0.1)
                p.g_total = 0.1;
            const int k = draw.uniform_int(0, 4);
            CHECK(classify_regime(p, ModeIndex{k, k}) == Regime::Oscillatory);
        }
    }
    SUBCASE("threshold example: G = 1, eta = 10 gives threshold 0.04") {
        SystemParams p = resonant(1.0, 10.0);
        CHECK(hyperbolic_threshold(p) == doctest::Approx(0.04).epsilon(1e-12));
        CHECK(classify_regime(p, ModeIndex{1, 0}) == Regime::Hyperbolic);
        const auto c = effective_coeffs(p, ModeIndex{1, 0});
        CHECK(c.stiffness() < 0.0);
    }
    SUBCASE("G = 0 keeps every branch oscillatory") {
        SystemParams p = resonant(0.0, 1.0);
        p.omega_0 = 11.0;
        CHECK(hyperbolic_threshold(p) == std::numeric_limits<double>::infinity());
        for (int na : {0, 1, 5})
            CHECK(classify_regime(p, ModeIndex{na, 0}) == Regime::Oscillatory);
    }
    SUBCASE("hyperbolic iff the pseudo-frequency acquires an imaginary part") {
        testsupport::Draw draw(53);
        for (int i = 0; i < 200; ++i) {
            auto p = draw.params();
            if (p.g_total < 0.1)
                p.g_total = 0.1;
            const auto n = draw.branch();
            const auto c = effective_coeffs(p, n);
            CHECK((classify_regime(p, n) == Regime::Hyperbolic)
                  == (std::abs(c.pseudo_freq.imag()) > 0.0));
        }
    }
}

TEST_CASE("Bogoliubov coefficients") {
    SUBCASE("alpha = 0 is the identity transform") {
        const auto b = bogoliubov(resonant(5.0), ModeIndex{1, 1});
        CHECK(b.mu == 1.0);
        CHECK(b.nu == 0.0);
        CHECK(b.r == 0.0);
    }
    SUBCASE("omega_m = 1, alpha = 0.05 quarter powers") {
        const auto c = EffectiveCoeffs::from_overrides(resonant(1.0), 0.05, 0.0);
        const auto b = bogoliubov(1.0, c);
        const double down = std::pow(1.0 / 1.2, 0.25);
        const double up = std::pow(1.2, 0.25);
        CHECK(b.mu == doctest::Approx(0.5 * (down + up)).epsilon(1e-14));
        CHECK(b.nu == doctest::Approx(0.5 * (down - up)).epsilon(1e-14));
        CHECK(b.mu * b.mu - b.nu * b.nu == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("mu^2 - nu^2 = 1 and sign(nu) = -sign(alpha) wherever defined") {
        testsupport::Draw draw(61);
        int checked = 0;
        while (checked < 200) {
            auto p = draw.params();
            const auto n = draw.branch();
            const auto c = effective_coeffs(p, n);
            if (c.regime != Regime::Oscillatory)
                continue;
            const auto b = bogoliubov(p.omega_m, c);
            CHECK(std::abs(b.mu * b.mu - b.nu * b.nu - 1.0) < 1e-12);
            CHECK(b.mu >= 1.0);
            if (c.alpha != 0.0)
                CHECK(b.nu * c.alpha < 0.0);
            CHECK(std::cosh(b.r) == doctest::Approx(b.mu).epsilon(1e-12));
            ++checked;
        }
    }
    SUBCASE("squeezing diverges toward the critical point") {
        double previous = 0.0;
        for (double alpha : {-0.2, -0.24, -0.2495, -0.24995}) {
            const auto c = EffectiveCoeffs::from_overrides(resonant(1.0), alpha, 0.0);
            const auto b = bogoliubov(1.0, c);
            CHECK(b.mu > previous);
            previous = b.mu;
        }
        CHECK(previous > 3.0);
    }
    SUBCASE("hyperbolic regime is refused") {
        SystemParams p = resonant(1.0, 10.0);
        CHECK_THROWS_AS((void)bogoliubov(p, ModeIndex{1, 0}), HyperbolicRegime);
    }
}

TEST_CASE("pure functions are safe to call concurrently") {
    const SystemParams p = resonant(5.0, 0.1);
    const ModeIndex n{0, 2};
    const auto serial = effective_coeffs(p, n);

    std::vector<std::future<EffectiveCoeffs>> jobs;
    for (int i = 0; i < 8; ++i)
        jobs.push_back(std::async(std::launch::async, [&] { return effective_coeffs(p, n); }));
    for (auto& job : jobs) {
        const auto c = job.get();
        CHECK(c.alpha == serial.alpha);
        CHECK(c.beta == serial.beta);
        CHECK(c.zeta() == serial.zeta());
    }
}
