#pragma once

#include <variant>
#include <vector>

#include "tfw/field_ops.hpp"

namespace tfw {

/// Symbolic nuclear charge density. Analytic kinds can be sampled on any
/// grid and at scaled coordinates; tabulated kinds only on their own grid.
class NuclearModel {
  public:
    /// amplitude * |cos(n pi x1)| * exp(-x3^2 / gauss_width). With
    /// fourier_harmonics > 0 the |cos| factor is replaced by its truncated
    /// Fourier series (closed-form coefficients), which makes slice charges
    /// exact under the grid quadrature.
    static NuclearModel separable_cos_gauss(int n, double amplitude, double gauss_width,
                                            int fourier_harmonics = 0);
    static NuclearModel constant(double value);
    static NuclearModel tabulated(RealField field);
    static NuclearModel x3_profile(std::vector<double> values);

    /// Sample m on the grid. Throws unsampleable_model on grid mismatch.
    RealField sample(const Grid3& grid) const;

    /// Sample m(n x1, n x2, x3) on the grid (periodic wrap in x1, x2).
    RealField sample_scaled(const Grid3& grid, int n) const;

    double total_charge(const Grid3& grid) const { return integrate(sample(grid)); }

    bool is_analytic() const;

  private:
    struct SeparableCosGauss {
        int n;
        double amplitude;
        double gauss_width;
        int fourier_harmonics;
    };
    struct Constant {
        double value;
    };
    struct Tabulated {
        RealField field;
    };
    struct X3Profile {
        std::vector<double> values;
    };

    using Kind = std::variant<SeparableCosGauss, Constant, Tabulated, X3Profile>;
    explicit NuclearModel(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

}  // namespace tfw
