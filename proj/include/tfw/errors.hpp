#pragma once

#include <stdexcept>
#include <string>

namespace tfw {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct grid_mismatch : error {
    grid_mismatch() : error("fields live on different grids") {}
};

struct non_hermitian_input : error {
    explicit non_hermitian_input(double violation)
        : error("spectral coefficients violate Hermitian symmetry by " + std::to_string(violation)) {}
};

struct invalid_exponent : error {
    explicit invalid_exponent(double p)
        : error("norm exponent must satisfy p >= 1, got " + std::to_string(p)) {}
};

struct negative_density : error {
    explicit negative_density(double min_value)
        : error("density has negative values beyond round-off, min = " + std::to_string(min_value)) {}
};

struct not_neutral : error {
    explicit not_neutral(double net_charge)
        : error("field is not charge neutral, net charge = " + std::to_string(net_charge)) {}
};

struct singular_point : error {
    singular_point() : error("evaluation point coincides with a lattice charge") {}
};

struct unsampleable_model : error {
    explicit unsampleable_model(const std::string& why) : error("cannot sample nuclear model: " + why) {}
};

struct eigensolver_stalled : error {
    int iterations;
    double residual;
    eigensolver_stalled(int it, double res)
        : error("eigensolver stalled after " + std::to_string(it) +
                " iterations, residual " + std::to_string(res)),
          iterations(it), residual(res) {}
};

struct scf_diverged : error {
    using error::error;
};

struct degenerate_fit : error {
    using error::error;
};

struct config_error : error {
    std::string key;
    config_error(std::string key_path, const std::string& what_failed)
        : error(key_path + ": " + what_failed), key(std::move(key_path)) {}
};

}  // namespace tfw
