#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tfw/coulomb.hpp"
#include "tfw/nuclear.hpp"

namespace tfw {

struct ScfConfig {
    double tolerance = 1e-6;       // fixed-point stop on ||u_n - u_{n+1}||_2
    int max_iterations = 200;
    double mixing = 1.0;           // damping on the u-update (cap for line search)
    double eigensolver_tol = 1e-10;
    int eigensolver_max_iter = 600;
    double kinetic_exponent = 5.0 / 3.0;

    // The bare fixed-point map overshoots violently at strong Hartree
    // coupling (its Jacobian has eigenvalues ~ -100 for the densities of
    // interest), so the default stabilizes the same update direction with an
    // energy line search and accelerates the residual sequence.
    enum class Acceleration { plain, line_search, anderson };
    Acceleration acceleration = Acceleration::anderson;
    int anderson_depth = 8;

    double phi_gauge_offset = 0.0;  // diagnostic constant added to phi; shifts lambda only
    std::optional<std::array<int, 3>> iterate_filter;  // spectral truncation of iterates

    void validate() const;
};

struct EnergyBreakdown {
    double kinetic_grad = 0.0;  // integral of |grad u|^2
    double kinetic_tf = 0.0;    // integral of rho^p
    double hartree = 0.0;       // 1/2 D(rho - m, rho - m)
    double total = 0.0;
};

struct ScfResult {
    RealField u;
    RealField rho;
    RealField phi;
    double lambda = 0.0;
    EnergyBreakdown energy;
    int iterations = 0;
    std::vector<double> residual_trace;  // ||u_n - u_{n+1}||_2 per iteration
    double max_charge_drift = 0.0;       // max over iterations of |int u^2 - Z| / Z
    double kinetic_exponent = 5.0 / 3.0;
};

/// H v = -laplace(v) + (u_prev_pow + phi) v, the linearized operator with
/// u_prev_pow = p * u_n^{2p-2} precomputed by the caller.
RealField apply_hamiltonian(const RealField& u_prev_pow, const RealField& phi, const RealField& v);

struct EigenPair {
    double value;
    RealField vector;  // L2-normalized, integral >= 0
};

/// Matrix-free lowest eigenpair of the linearized Hamiltonian, residual
/// ||H w - lambda w||_2 <= eigensolver_tol * ||w||_2.
/// Throws eigensolver_stalled when eigensolver_max_iter is exhausted.
EigenPair lowest_eigenpair(const RealField& u_prev_pow, const RealField& phi,
                           const ScfConfig& config, const RealField& initial_guess);

/// Self-consistent ground state on the periodic cell.
ScfResult scf_solve(const NuclearModel& m, const Grid3& grid, const ScfConfig& config);

/// Same solve on a collapsed grid (n1 = n2 = 1).
ScfResult scf_solve_1d(const NuclearModel& mu, const Grid3& grid, const ScfConfig& config);

/// ||-laplace(u) + p u^{2p-1} + phi u - lambda u||_2 / ||u||_2 with phi
/// recomputed from m in the zero-mean gauge and lambda the Rayleigh quotient
/// of the recomputed operator (gauge-invariant defect measure).
double el_residual(const ScfResult& result, const NuclearModel& m);
double el_residual(const ScfResult& result, const RealField& m_sampled);

}  // namespace tfw
