#include "tfw/nuclear.hpp"

#include <cmath>

namespace tfw {
namespace {
constexpr double kPi = 3.14159265358979323846;
}

NuclearModel NuclearModel::separable_cos_gauss(int n, double amplitude, double gauss_width,
                                               int fourier_harmonics) {
    if (n < 1) throw error("separable_cos_gauss n must be >= 1");
    if (!(amplitude >= 0.0)) throw error("separable_cos_gauss amplitude must be nonnegative");
    if (!(gauss_width > 0.0)) throw error("separable_cos_gauss gauss_width must be positive");
    if (fourier_harmonics < 0) throw error("separable_cos_gauss fourier_harmonics must be >= 0");
    return NuclearModel(Kind{SeparableCosGauss{n, amplitude, gauss_width, fourier_harmonics}});
}

NuclearModel NuclearModel::constant(double value) {
    if (!(value >= 0.0)) throw error("constant nuclear density must be nonnegative");
    return NuclearModel(Kind{Constant{value}});
}

NuclearModel NuclearModel::tabulated(RealField field) {
    return NuclearModel(Kind{Tabulated{std::move(field)}});
}

NuclearModel NuclearModel::x3_profile(std::vector<double> values) {
    if (values.empty()) throw error("x3_profile must not be empty");
    return NuclearModel(Kind{X3Profile{std::move(values)}});
}

bool NuclearModel::is_analytic() const {
    return std::holds_alternative<SeparableCosGauss>(kind_) ||
           std::holds_alternative<Constant>(kind_);
}

RealField NuclearModel::sample_scaled(const Grid3& grid, int n) const {
    if (n < 1) throw error("scale factor must be >= 1");
    RealField out(grid);
    if (const auto* scg = std::get_if<SeparableCosGauss>(&kind_)) {
        for (int i = 0; i < grid.n1(); ++i) {
            const double x1 = grid.coord(0, i);
            double profile;
            if (scg->fourier_harmonics > 0) {
                // |cos(pi s)| = 2/pi + (4/pi) sum_j (-1)^{j+1} cos(2 pi j s) / (4j^2 - 1)
                profile = 2.0 / kPi;
                for (int j = 1; j <= scg->fourier_harmonics; ++j)
                    profile += (4.0 / kPi) * (j % 2 == 1 ? 1.0 : -1.0) *
                               std::cos(2.0 * kPi * j * scg->n * n * x1) / (4.0 * j * j - 1.0);
            } else {
                profile = std::abs(std::cos(scg->n * n * kPi * x1));
            }
            for (int j = 0; j < grid.n2(); ++j)
                for (int k = 0; k < grid.n3(); ++k) {
                    const double x3 = grid.coord(2, k);
                    out.at(i, j, k) =
                        scg->amplitude * profile * std::exp(-x3 * x3 / scg->gauss_width);
                }
        }
        return out;
    }
    if (const auto* c = std::get_if<Constant>(&kind_)) {
        for (double& v : out.values) v = c->value;
        return out;
    }
    if (const auto* tab = std::get_if<Tabulated>(&kind_)) {
        if (tab->field.grid != grid)
            throw unsampleable_model("tabulated model lives on a different grid");
        // m(n x1, n x2, x3): the scaled point lands back on the grid because
        // the grid is uniform and periodic; n1 even makes the offset integral.
        for (int i = 0; i < grid.n1(); ++i)
            for (int j = 0; j < grid.n2(); ++j) {
                const int si = static_cast<int>(
                    ((static_cast<long long>(i) * n - static_cast<long long>(n - 1) * grid.n1() / 2) %
                         grid.n1() +
                     grid.n1()) %
                    grid.n1());
                const int sj = static_cast<int>(
                    ((static_cast<long long>(j) * n - static_cast<long long>(n - 1) * grid.n2() / 2) %
                         grid.n2() +
                     grid.n2()) %
                    grid.n2());
                for (int k = 0; k < grid.n3(); ++k) out.at(i, j, k) = tab->field.at(si, sj, k);
            }
        return out;
    }
    const auto& prof = std::get<X3Profile>(kind_);
    if (static_cast<int>(prof.values.size()) != grid.n3())
        throw unsampleable_model("x3_profile length does not match grid n3");
    for (int i = 0; i < grid.n1(); ++i)
        for (int j = 0; j < grid.n2(); ++j)
            for (int k = 0; k < grid.n3(); ++k) out.at(i, j, k) = prof.values[static_cast<size_t>(k)];
    return out;
}

RealField NuclearModel::sample(const Grid3& grid) const { return sample_scaled(grid, 1); }

}  // namespace tfw
