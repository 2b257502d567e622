#pragma once

#include <array>

#include "tfw/coulomb.hpp"

namespace tfw {

/// Truncation parameters for real-space Green function evaluation.
struct GreenEvalConfig {
    int lattice_cutoff = 20;  // max |k| of lattice vectors in the sum, in units of q_side
    int quad_points = 16;     // Gauss points per axis for the cell averages

    void validate() const {
        if (lattice_cutoff < 2) throw error("green lattice_cutoff must be >= 2");
        if (quad_points < 16) throw error("green quad_points must be >= 16");
    }
};

/// Real-space periodic Green function: the background-screened lattice sum
/// plus the -2pi|x3|/|Q| far field. x is reduced into the primary cell in
/// the periodic directions before evaluation, so lattice translations are
/// exact. Throws singular_point within 1e-9 of a charge site.
double eval_green_realspace(const std::array<double, 3>& x, const UnitCell& cell,
                            const GreenEvalConfig& cfg);

/// Bounded remainder of the kernel decomposition:
/// psi(x) = G(x) + 2pi|x3|/|Q| - 1/|x| with x reduced to the primary cell.
double green_psi(const std::array<double, 3>& x, const UnitCell& cell, const GreenEvalConfig& cfg);

/// Relative L2 discrepancy, over a half-spacing-shifted probe set, between
/// the real-space convolution of f with the Green function and the spectral
/// Poisson solution, after matching means. Validation-only path.
double validate_green_vs_spectral(const NeutralField& f, const GreenEvalConfig& cfg);

}  // namespace tfw
