#pragma once

#include <complex>
#include <vector>

#include "tfw/cell.hpp"

namespace tfw {

/// Scalar field sampled on the grid, row-major (x1 slowest, x3 fastest).
struct RealField {
    Grid3 grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(const Grid3& g) : grid(g), values(static_cast<size_t>(g.size()), 0.0) {}
    RealField(const Grid3& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != static_cast<size_t>(g.size()))
            throw error("field value count does not match grid size");
    }

    double& at(int i, int j, int k) { return values[static_cast<size_t>(grid.index(i, j, k))]; }
    double at(int i, int j, int k) const { return values[static_cast<size_t>(grid.index(i, j, k))]; }
};

/// Fourier coefficients of a field, stored in FFT slot order; coefficient 0
/// is the grid mean of the field.
struct SpectralField {
    Grid3 grid;
    std::vector<std::complex<double>> coeffs;

    SpectralField() = default;
    explicit SpectralField(const Grid3& g)
        : grid(g), coeffs(static_cast<size_t>(g.size()), {0.0, 0.0}) {}

    std::complex<double>& at_slot(int s1, int s2, int s3) {
        return coeffs[static_cast<size_t>(grid.index(s1, s2, s3))];
    }
    std::complex<double> at_slot(int s1, int s2, int s3) const {
        return coeffs[static_cast<size_t>(grid.index(s1, s2, s3))];
    }
    std::complex<double>& at_mode(ModeIndex k) {
        return coeffs[static_cast<size_t>(grid.index(
            grid.slot_of_mode(0, k.k1), grid.slot_of_mode(1, k.k2), grid.slot_of_mode(2, k.k3)))];
    }
    std::complex<double> at_mode(ModeIndex k) const {
        return coeffs[static_cast<size_t>(grid.index(
            grid.slot_of_mode(0, k.k1), grid.slot_of_mode(1, k.k2), grid.slot_of_mode(2, k.k3)))];
    }
};

}  // namespace tfw
