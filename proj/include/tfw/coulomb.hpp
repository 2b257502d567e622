#pragma once

#include "tfw/field_ops.hpp"

namespace tfw {

/// Charge distribution with vanishing net charge, the class on which the
/// periodic Poisson problem and the Hartree forms are defined.
/// Construction enforces |integral| <= 1e-8 * L1 norm.
class NeutralField {
  public:
    explicit NeutralField(RealField f);

    const RealField& field() const { return field_; }
    const Grid3& grid() const { return field_.grid; }

  private:
    RealField field_;
};

/// Subtract the mean so the result is exactly neutral on the grid.
RealField neutralized(const RealField& f);

/// Solve -laplace(phi) = 4 pi f with the zero-mean gauge (phi_hat(0) = 0).
RealField solve_poisson(const NeutralField& f);

/// Hartree bilinear form against the periodic Green function,
/// |cell| * sum_{k!=0} 4 pi conj(f_k) g_k / (4 pi^2 |kappa|^2).
double hartree_dg(const NeutralField& f, const NeutralField& g);

/// 1D Hartree form on a collapsed grid (n1 = n2 = 1); the periodized
/// counterpart of the -2pi|s-t| line kernel.
double hartree_d1(const NeutralField& f, const NeutralField& g);

}  // namespace tfw
