#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "tfw/errors.hpp"

namespace tfw {

/// Computational cell Q x [-L/2, L/2] with Q a square of side q_side.
struct UnitCell {
    double q_side = 1.0;
    double length_x3 = 1.0;

    UnitCell() = default;
    UnitCell(double q, double l) : q_side(q), length_x3(l) {
        if (!(q > 0.0)) throw error("cell q_side must be positive");
        if (!(l > 0.0)) throw error("cell length_x3 must be positive");
    }

    double volume() const { return q_side * q_side * length_x3; }
    double side(int axis) const { return axis == 2 ? length_x3 : q_side; }

    bool operator==(const UnitCell& o) const {
        return q_side == o.q_side && length_x3 == o.length_x3;
    }
};

/// Signed Fourier mode index; the continuous frequency is
/// (k1/q, k2/q, k3/L).
struct ModeIndex {
    int k1 = 0, k2 = 0, k3 = 0;
};

/// Uniform periodic grid on the cell, sample points
/// x_i(j) = -side_i/2 + j*side_i/n_i, j = 0..n_i-1.
/// Each n_i is either even (>= 2) or exactly 1; n_i = 1 collapses the axis,
/// which is how 1D problems reuse the 3D machinery.
class Grid3 {
  public:
    Grid3() = default;
    Grid3(int n1, int n2, int n3, UnitCell cell) : n_{n1, n2, n3}, cell_(cell) {
        for (int a = 0; a < 3; ++a) {
            if (n_[a] < 1 || (n_[a] > 1 && n_[a] % 2 != 0))
                throw error("grid size n" + std::to_string(a + 1) + " must be 1 or even >= 2, got " +
                            std::to_string(n_[a]));
        }
    }

    int n1() const { return n_[0]; }
    int n2() const { return n_[1]; }
    int n3() const { return n_[2]; }
    int n(int axis) const { return n_[axis]; }
    const UnitCell& cell() const { return cell_; }
    std::int64_t size() const {
        return static_cast<std::int64_t>(n_[0]) * n_[1] * n_[2];
    }
    double volume() const { return cell_.volume(); }
    double spacing(int axis) const { return cell_.side(axis) / n_[axis]; }

    double coord(int axis, int j) const {
        return -0.5 * cell_.side(axis) + cell_.side(axis) * j / n_[axis];
    }
    std::array<double, 3> point(int i, int j, int k) const {
        return {coord(0, i), coord(1, j), coord(2, k)};
    }

    std::int64_t index(int i, int j, int k) const {
        return (static_cast<std::int64_t>(i) * n_[1] + j) * n_[2] + k;
    }

    /// Signed mode for FFT slot s on one axis (slot n/2 maps to +n/2).
    int mode_of_slot(int axis, int s) const {
        return s <= n_[axis] / 2 ? s : s - n_[axis];
    }
    int slot_of_mode(int axis, int k) const {
        return k >= 0 ? k : k + n_[axis];
    }
    ModeIndex mode(int s1, int s2, int s3) const {
        return {mode_of_slot(0, s1), mode_of_slot(1, s2), mode_of_slot(2, s3)};
    }

    bool is_1d() const { return n_[0] == 1 && n_[1] == 1; }

    bool operator==(const Grid3& o) const {
        return n_ == o.n_ && cell_ == o.cell_;
    }
    bool operator!=(const Grid3& o) const { return !(*this == o); }

  private:
    std::array<int, 3> n_{1, 1, 1};
    UnitCell cell_;
};

/// Eigenvalue of -Laplace on basis mode k: 4pi^2 |kappa(k)|^2.
inline double laplacian_symbol(const Grid3& g, ModeIndex k) {
    const double q = g.cell().q_side;
    const double l = g.cell().length_x3;
    const double f1 = k.k1 / q, f2 = k.k2 / q, f3 = k.k3 / l;
    constexpr double four_pi_sq = 4.0 * 3.14159265358979323846 * 3.14159265358979323846;
    return four_pi_sq * (f1 * f1 + f2 * f2 + f3 * f3);
}

}  // namespace tfw
