// fock.hpp — brute-force validator on truncated Fock spaces
//
// Dense Hermitian matrix representations of the effective mirror Hamiltonian,
// the two-mode exciton/photon Hamiltonian (mirror frozen at x) and the full
// tripartite Hamiltonian, plus exact evolution by eigendecomposition and a
// cutoff-doubling convergence driver. Everything here is deliberately
// independent of the closed forms it is used to check: only the raw parameter
// set and ladder-operator algebra enter.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <functional>

#include "optomech/effective.hpp"
#include "optomech/errors.hpp"
#include "optomech/params.hpp"

namespace optomech::fock {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

// Default cap on the memory spent on one dense matrix.
inline constexpr std::size_t default_memory_budget = std::size_t{512} << 20;

// Guard levels appended while composing same-mode operator products, so that
// e.g. c^2 and c^dag c are exact on every retained level after cropping.
inline constexpr int truncation_margin = 2;

struct FockSpace {
    int cutoff{2};       // retained Fock levels per mode
    int mode_count{1};   // 1 (mirror), 2 (exciton+photon) or 3 (full system)

    std::size_t dim() const;

    // Throws InvalidParams / MemoryBudgetExceeded.
    void validate(std::size_t budget_bytes = default_memory_budget) const;
};

struct OperatorMatrix {
    Matrix entries;
    bool hermitian{false};

    Eigen::Index dim() const { return entries.rows(); }
};

// ------------------------------ operator algebra -----------------------------

// max-norm of M - M^dag
double hermiticity_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-12);

// Annihilation operator on `cutoff` levels: <k|c|k+1> = sqrt(k+1).
Matrix ladder(int cutoff);
Matrix number_operator(int cutoff);

// Mirror position x = (c + c^dag) / sqrt(2 m omega_m) on a single-mode space.
Matrix position_operator(const SystemParams& params, const FockSpace& space);

Matrix kron(const Matrix& a, const Matrix& b);

// ----------------------------- Hamiltonian builders --------------------------

// H = (omega_m + 2 alpha) c^dag c + alpha (c^2 + c^dag^2) + beta (c + c^dag) + gamma
OperatorMatrix build_mirror_hamiltonian(const SystemParams& params, const ModeIndex& n,
                                        const FockSpace& space);
OperatorMatrix build_mirror_hamiltonian(const SystemParams& params, const EffectiveCoeffs& coeffs,
                                        const FockSpace& space);

// H = omega_0 b^dag b + (omega_c + eta x) a^dag a + G (b^dag a + b a^dag),
// mirror coordinate frozen at x. Mode order: (b, a).
OperatorMatrix build_two_mode_hamiltonian(const SystemParams& params, double x,
                                          const FockSpace& space);

// Full system, mirror quantized. Mode order: (b, a, c).
OperatorMatrix build_tripartite_hamiltonian(const SystemParams& params, const FockSpace& space);

// -------------------------------- states -------------------------------------

Vector vacuum(const FockSpace& space);

// Truncated coherent state, renormalized on the retained levels.
Vector coherent_state(int cutoff, Complex alpha);

// Two-mode polariton Fock state |n_A, n_B> at mirror position x:
// (A^dag)^nA (B^dag)^nB |00> / sqrt(nA! nB!), built from the dressing angle.
Vector polariton_state(const SystemParams& params, double x, const ModeIndex& n,
                       const FockSpace& space);

// Probability carried by basis states with any mode occupation in the top
// `guard_levels` of the ladder; the truncation-artifact monitor.
double tail_population(const Vector& psi, const FockSpace& space, int guard_levels = 1);

// ------------------------------- evolution -----------------------------------

// Cached eigendecomposition of one Hamiltonian, reusable across a time grid
// and shareable between threads once constructed.
class HermitianEvolver {
  public:
    explicit HermitianEvolver(const OperatorMatrix& h);

    Vector psi_at(const Vector& psi0, double t) const;

    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const Matrix& eigenvectors() const { return evecs_; }

  private:
    Eigen::VectorXd evals_;
    Matrix evecs_;
};

Vector evolve(const OperatorMatrix& h, const Vector& psi0, double t);

// ------------------------------ measurements ---------------------------------

Complex overlap(const Vector& psi, const Vector& phi);
Complex expectation(const Matrix& op, const Vector& psi);

// <Delta x^2> in state psi on a single-mode mirror space.
double variance_x(const Vector& psi, const SystemParams& params, const FockSpace& space);
double mean_x(const Vector& psi, const SystemParams& params, const FockSpace& space);

// Eigenvalues of the total-excitation-1 block of the two-mode Hamiltonian,
// ascending. Closed-block projection, no truncation artifact.
std::array<double, 2> single_excitation_eigenvalues(const SystemParams& params, double x);

// --------------------------- convergence driver ------------------------------

struct ConvergenceOptions {
    int max_cutoff{4096};
    int mode_count{1};
    std::size_t budget_bytes{default_memory_budget};
};

struct ConvergenceResult {
    double value{0.0};
    int cutoff{0};       // cutoff that produced `value`
    int evaluations{0};
};

// Doubles the cutoff until two successive values agree to `tol` (relative,
// with absolute floor 1). Throws NonConvergence when the cutoff cap or the
// matrix memory budget is hit first.
ConvergenceResult converged(const std::function<double(int)>& compute, int start_cutoff,
                            double tol, const ConvergenceOptions& options = {});

} // namespace optomech::fock
