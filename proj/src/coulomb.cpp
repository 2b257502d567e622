#include "tfw/coulomb.hpp"

#include <cmath>

namespace tfw {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

NeutralField::NeutralField(RealField f) : field_(std::move(f)) {
    const double net = integrate(field_);
    const double l1 = lp_norm(field_, 1.0);
    if (std::abs(net) > 1e-8 * l1) throw not_neutral(net);
}

RealField neutralized(const RealField& f) {
    const double m = mean(f);
    RealField out = f;
    for (double& v : out.values) v -= m;
    return out;
}

RealField solve_poisson(const NeutralField& f) {
    const Grid3& g = f.grid();
    SpectralField c = forward_transform(f.field());
    for (int s1 = 0; s1 < g.n1(); ++s1)
        for (int s2 = 0; s2 < g.n2(); ++s2)
            for (int s3 = 0; s3 < g.n3(); ++s3) {
                auto& v = c.coeffs[static_cast<size_t>(g.index(s1, s2, s3))];
                const double sym = laplacian_symbol(g, g.mode(s1, s2, s3));
                v = sym > 0.0 ? v * (4.0 * kPi / sym) : std::complex<double>{0.0, 0.0};
            }
    return inverse_transform(c);
}

double hartree_dg(const NeutralField& f, const NeutralField& g) {
    if (f.grid() != g.grid()) throw grid_mismatch();
    const Grid3& gr = f.grid();
    const SpectralField cf = forward_transform(f.field());
    const SpectralField cg = forward_transform(g.field());
    double s = 0.0, comp = 0.0;
    for (int s1 = 0; s1 < gr.n1(); ++s1)
        for (int s2 = 0; s2 < gr.n2(); ++s2)
            for (int s3 = 0; s3 < gr.n3(); ++s3) {
                const double sym = laplacian_symbol(gr, gr.mode(s1, s2, s3));
                if (sym <= 0.0) continue;
                const auto idx = static_cast<size_t>(gr.index(s1, s2, s3));
                const double term =
                    4.0 * kPi * (std::conj(cf.coeffs[idx]) * cg.coeffs[idx]).real() / sym;
                const double y = term - comp;
                const double t = s + y;
                comp = (t - s) - y;
                s = t;
            }
    return gr.volume() * s;
}

double hartree_d1(const NeutralField& f, const NeutralField& g) {
    if (!f.grid().is_1d() || !g.grid().is_1d())
        throw error("hartree_d1 requires collapsed grids (n1 = n2 = 1)");
    return hartree_dg(f, g);
}

}  // namespace tfw
