#include "optomech/fock.hpp"

#include <cmath>
#include <string>

#include "optomech/polariton.hpp"

namespace optomech::fock {

std::size_t FockSpace::dim() const {
    std::size_t d = 1;
    for (int i = 0; i < mode_count; ++i)
        d *= static_cast<std::size_t>(cutoff);
    return d;
}

void FockSpace::validate(std::size_t budget_bytes) const {
    if (cutoff < 2)
        throw InvalidParams("FockSpace: cutoff must be >= 2");
    if (mode_count < 1 || mode_count > 3)
        throw InvalidParams("FockSpace: mode_count must be 1, 2 or 3");
    const std::size_t d = dim();
    const double bytes = static_cast<double>(d) * static_cast<double>(d) * sizeof(Complex);
    if (bytes > static_cast<double>(budget_bytes))
        throw MemoryBudgetExceeded("FockSpace: dense matrix of dim " + std::to_string(d)
                                   + " exceeds memory budget");
}

// ------------------------------ operator algebra -----------------------------

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && hermiticity_defect(m) < tol;
}

Matrix ladder(int cutoff) {
    Matrix c = Matrix::Zero(cutoff, cutoff);
    for (int k = 0; k + 1 < cutoff; ++k)
        c(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
    return c;
}

Matrix number_operator(int cutoff) {
    Matrix n = Matrix::Zero(cutoff, cutoff);
    for (int k = 0; k < cutoff; ++k)
        n(k, k) = static_cast<double>(k);
    return n;
}

Matrix position_operator(const SystemParams& params, const FockSpace& space) {
    const Matrix c = ladder(space.cutoff);
    return (c + c.adjoint()) / std::sqrt(2.0 * params.mass * params.omega_m);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// ----------------------------- Hamiltonian builders --------------------------

OperatorMatrix build_mirror_hamiltonian(const SystemParams& params, const EffectiveCoeffs& coeffs,
                                        const FockSpace& space) {
    params.validate();
    space.validate();
    if (space.mode_count != 1)
        throw InvalidParams("build_mirror_hamiltonian: single-mode space required");

    // Same-mode products (c^2, c^dag^2) pollute the top ladder levels, so the
    // Hamiltonian is assembled with guard levels and cropped.
    const int wide = space.cutoff + truncation_margin;
    const Matrix c = ladder(wide);
    const Matrix cd = c.adjoint();
    Matrix h = (params.omega_m + 2.0 * coeffs.alpha) * (cd * c)
               + coeffs.alpha * (c * c + cd * cd)
               + coeffs.beta * (c + cd);
    h += coeffs.gamma * Matrix::Identity(wide, wide);

    OperatorMatrix out;
    out.entries = h.topLeftCorner(space.cutoff, space.cutoff);
    out.hermitian = true;
    return out;
}

OperatorMatrix build_mirror_hamiltonian(const SystemParams& params, const ModeIndex& n,
                                        const FockSpace& space) {
    return build_mirror_hamiltonian(params, effective_coeffs(params, n), space);
}

OperatorMatrix build_two_mode_hamiltonian(const SystemParams& params, double x,
                                          const FockSpace& space) {
    params.validate();
    space.validate();
    if (space.mode_count != 2)
        throw InvalidParams("build_two_mode_hamiltonian: two-mode space required");

    const int k = space.cutoff;
    const Matrix id = Matrix::Identity(k, k);
    const Matrix num = number_operator(k);
    const Matrix c = ladder(k);
    const Matrix cd = c.adjoint();

    // Mode order (b, a); every term is a cross-mode product of single powers,
    // exact on the retained levels without guard rows.
    Matrix h = params.omega_0 * kron(num, id)
               + (params.omega_c + params.eta * x) * kron(id, num)
               + params.g_total * (kron(cd, c) + kron(c, cd));

    OperatorMatrix out;
    out.entries = std::move(h);
    out.hermitian = true;
    return out;
}

OperatorMatrix build_tripartite_hamiltonian(const SystemParams& params, const FockSpace& space) {
    params.validate();
    space.validate();
    if (space.mode_count != 3)
        throw InvalidParams("build_tripartite_hamiltonian: three-mode space required");

    const int k = space.cutoff;
    const Matrix id = Matrix::Identity(k, k);
    const Matrix num = number_operator(k);
    const Matrix c = ladder(k);
    const Matrix cd = c.adjoint();
    const Matrix x_op = (c + cd) / std::sqrt(2.0 * params.mass * params.omega_m);

    // Mode order (b, a, c). Zero-point mirror energy omitted: it shifts every
    // branch by the same global phase.
    Matrix h = params.omega_0 * kron(kron(num, id), id)
               + params.omega_c * kron(kron(id, num), id)
               + params.g_total * (kron(kron(cd, c), id) + kron(kron(c, cd), id))
               + params.omega_m * kron(kron(id, id), num)
               + params.eta * kron(kron(id, num), x_op);

    OperatorMatrix out;
    out.entries = std::move(h);
    out.hermitian = true;
    return out;
}

// -------------------------------- states -------------------------------------

Vector vacuum(const FockSpace& space) {
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
    psi(0) = 1.0;
    return psi;
}

Vector coherent_state(int cutoff, Complex alpha) {
    Vector psi(cutoff);
    psi(0) = 1.0;
    for (int n = 1; n < cutoff; ++n)
        psi(n) = psi(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    psi.normalize();
    return psi;
}

Vector polariton_state(const SystemParams& params, double x, const ModeIndex& n,
                       const FockSpace& space) {
    params.validate();
    n.validate();
    space.validate();
    if (space.mode_count != 2)
        throw InvalidParams("polariton_state: two-mode space required");
    if (n.n_a + n.n_b >= space.cutoff)
        throw CutoffTooSmall("polariton_state: occupations exceed retained levels");

    const int k = space.cutoff;
    const Matrix id = Matrix::Identity(k, k);
    const Matrix cd = ladder(k).adjoint();
    const Matrix bdag = kron(cd, id);
    const Matrix adag = kron(id, cd);

    const double half = 0.5 * mixing_angle(params, x);
    const Matrix a_create = adag * std::cos(half) - bdag * std::sin(half);
    const Matrix b_create = adag * std::sin(half) + bdag * std::cos(half);

    Vector psi = vacuum(space);
    for (int i = 0; i < n.n_a; ++i)
        psi = a_create * psi;
    for (int i = 0; i < n.n_b; ++i)
        psi = b_create * psi;
    psi.normalize();
    return psi;
}

double tail_population(const Vector& psi, const FockSpace& space, int guard_levels) {
    if (psi.size() != static_cast<Eigen::Index>(space.dim()))
        throw DimensionMismatch("tail_population: state does not match space");
    double tail = 0.0;
    for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
        std::size_t rest = static_cast<std::size_t>(idx);
        bool in_tail = false;
        for (int mode = 0; mode < space.mode_count; ++mode) {
            const int occupation = static_cast<int>(rest % static_cast<std::size_t>(space.cutoff));
            rest /= static_cast<std::size_t>(space.cutoff);
            if (occupation >= space.cutoff - guard_levels) {
                in_tail = true;
                break;
            }
        }
        if (in_tail)
            tail += std::norm(psi(idx));
    }
    return tail;
}

// ------------------------------- evolution -----------------------------------

HermitianEvolver::HermitianEvolver(const OperatorMatrix& h) {
    if (h.entries.rows() != h.entries.cols())
        throw DimensionMismatch("HermitianEvolver: matrix not square");
    if (!h.hermitian)
        throw InvalidParams("HermitianEvolver: Hamiltonian must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries);
    if (solver.info() != Eigen::Success)
        throw Error("HermitianEvolver: eigendecomposition failed");
    evals_ = solver.eigenvalues();
    evecs_ = solver.eigenvectors();
}

Vector HermitianEvolver::psi_at(const Vector& psi0, double t) const {
    if (psi0.size() != evecs_.rows())
        throw DimensionMismatch("HermitianEvolver: state dimension mismatch");
    Vector coeffs = evecs_.adjoint() * psi0;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        coeffs(k) *= std::exp(Complex(0.0, -evals_(k) * t));
    return evecs_ * coeffs;
}

Vector evolve(const OperatorMatrix& h, const Vector& psi0, double t) {
    return HermitianEvolver(h).psi_at(psi0, t);
}

// ------------------------------ measurements ---------------------------------

Complex overlap(const Vector& psi, const Vector& phi) {
    if (psi.size() != phi.size())
        throw DimensionMismatch("overlap: state dimensions differ");
    return psi.dot(phi);   // Eigen's dot conjugates the first argument
}

Complex expectation(const Matrix& op, const Vector& psi) {
    if (op.rows() != psi.size() || op.cols() != psi.size())
        throw DimensionMismatch("expectation: operator/state dimensions differ");
    return psi.dot(op * psi);
}

double mean_x(const Vector& psi, const SystemParams& params, const FockSpace& space) {
    if (space.mode_count != 1)
        throw InvalidParams("mean_x: single-mode space required");
    if (psi.size() != static_cast<Eigen::Index>(space.dim()))
        throw DimensionMismatch("mean_x: state does not match space");
    return expectation(position_operator(params, space), psi).real();
}

double variance_x(const Vector& psi, const SystemParams& params, const FockSpace& space) {
    if (space.mode_count != 1)
        throw InvalidParams("variance_x: single-mode space required");
    if (psi.size() != static_cast<Eigen::Index>(space.dim()))
        throw DimensionMismatch("variance_x: state does not match space");

    const int wide = space.cutoff + truncation_margin;
    const Matrix c = ladder(wide);
    const Matrix x_wide = (c + c.adjoint()) / std::sqrt(2.0 * params.mass * params.omega_m);
    const Matrix x2 = (x_wide * x_wide).topLeftCorner(space.cutoff, space.cutoff);

    const double ex = mean_x(psi, params, space);
    const double ex2 = expectation(x2, psi).real();
    return ex2 - ex * ex;
}

std::array<double, 2> single_excitation_eigenvalues(const SystemParams& params, double x) {
    const FockSpace space{2, 2};
    const auto h = build_two_mode_hamiltonian(params, x, space);
    // Basis index i_b * cutoff + i_a: |0b 1a> = 1, |1b 0a> = 2.
    Matrix block(2, 2);
    block << h.entries(1, 1), h.entries(1, 2), h.entries(2, 1), h.entries(2, 2);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
    return {solver.eigenvalues()(0), solver.eigenvalues()(1)};
}

// --------------------------- convergence driver ------------------------------

ConvergenceResult converged(const std::function<double(int)>& compute, int start_cutoff,
                            double tol, const ConvergenceOptions& options) {
    if (!(tol > 0.0))
        throw InvalidParams("converged: tolerance must be positive");

    const auto ensure_feasible = [&](int cutoff) {
        if (cutoff > options.max_cutoff)
            throw NonConvergence("converged: cutoff cap " + std::to_string(options.max_cutoff)
                                 + " reached before values settled");
        try {
            FockSpace{cutoff, options.mode_count}.validate(options.budget_bytes);
        } catch (const MemoryBudgetExceeded&) {
            throw NonConvergence("converged: memory budget reached before values settled");
        }
    };

    int cutoff = std::max(start_cutoff, 2);
    ensure_feasible(cutoff);
    double previous = compute(cutoff);
    int evaluations = 1;

    while (true) {
        const int next = 2 * cutoff;
        ensure_feasible(next);
        const double value = compute(next);
        ++evaluations;
        if (std::abs(value - previous) < tol * std::max(1.0, std::abs(value)))
            return {value, next, evaluations};
        previous = value;
        cutoff = next;
    }
}

} // namespace optomech::fock
