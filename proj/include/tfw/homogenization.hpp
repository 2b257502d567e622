#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tfw/scf.hpp"

namespace tfw {

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Study configuration: solve the 3D problem for the rescaled densities m_N
/// over n_values, solve the slab-averaged 1D limit once, compare.
struct HomogenizationPlan {
    std::vector<int> n_values{1, 2, 3, 4};
    NuclearModel base_model =
        NuclearModel::separable_cos_gauss(1, 5.0 * 3.14159265358979323846 / 2.0, 8.0);
    UnitCell cell{1.0, 2.0 * 3.14159265358979323846};
    int grid_n1_per_n = 32;
    int grid_n2 = 4;
    int grid_n3 = 64;
    ScfConfig solver;

    // Spectral truncation of m_N to modes (k1_per_n * N, 0, k3), mirroring
    // the reference computation; off gives the pure grid sampling.
    bool mode_filter = true;
    int filter_k1_per_n = 4;
    int filter_k3 = 6;

    int threads = 1;

    Grid3 grid_for(int n) const { return Grid3(grid_n1_per_n * n, grid_n2, grid_n3, cell); }
    Grid3 grid_1d() const { return Grid3(1, 1, grid_n3, cell); }
    void validate() const;
};

struct HomogenizationEntry {
    int n = 0;
    double energy = 0.0;
    double err_l1 = 0.0;
    double err_l2 = 0.0;
    double err_linf = 0.0;
    double err_grad_l2 = 0.0;
    int iterations = 0;
    double el_residual = 0.0;
};

struct HomogenizationReport {
    std::vector<HomogenizationEntry> per_n;  // successful prefix, ascending n
    double i0 = 0.0;
    int iterations_1d = 0;
    double el_residual_1d = 0.0;
    std::vector<double> rho0_profile;
    std::map<std::string, RateFit> fitted_rates;  // present when >= 3 usable points
    bool complete = false;
    std::string failure;
};

/// Sample m_N(x) = m(N x1, N x2, x3) on the grid.
RealField build_m_n(const NuclearModel& base, int n, const Grid3& grid);

/// Per-slice average over the periodic directions.
std::vector<double> average_to_1d(const RealField& m);
std::vector<double> average_to_1d(const NuclearModel& m, const Grid3& grid);

/// Trigonometric resampling of a periodic profile to a new resolution.
std::vector<double> trig_resample(const std::vector<double>& profile, int n_to);

/// OLS fit of log(value) against log(n). Throws degenerate_fit for
/// nonpositive values or a single abscissa.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

HomogenizationReport run_study(const HomogenizationPlan& plan);

}  // namespace tfw
