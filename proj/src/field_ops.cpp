#include "tfw/field_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tfw {
namespace {

double kahan_sum(const std::vector<double>& v) {
    double s = 0.0, c = 0.0;
    for (double x : v) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

template <typename F>
double kahan_accumulate(size_t n, F&& term) {
    double s = 0.0, c = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double y = term(i) - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

}  // namespace

double mean(const RealField& f) {
    return kahan_sum(f.values) / static_cast<double>(f.values.size());
}

double integrate(const RealField& f) { return f.grid.volume() * mean(f); }

double lp_norm(const RealField& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw invalid_exponent(p);
    const double s = kahan_accumulate(f.values.size(),
                                      [&](size_t i) { return std::pow(std::abs(f.values[i]), p); });
    return std::pow(f.grid.volume() * s / static_cast<double>(f.values.size()), 1.0 / p);
}

double weighted_l1_x3(const RealField& f) {
    const Grid3& g = f.grid;
    double s = 0.0, c = 0.0;
    for (int i = 0; i < g.n1(); ++i)
        for (int j = 0; j < g.n2(); ++j)
            for (int k = 0; k < g.n3(); ++k) {
                const double y = std::abs(g.coord(2, k)) * std::abs(f.at(i, j, k)) - c;
                const double t = s + y;
                c = (t - s) - y;
                s = t;
            }
    return g.volume() * s / static_cast<double>(g.size());
}

double power_integral(const RealField& rho, double p) {
    double max_mag = 0.0;
    for (double v : rho.values) max_mag = std::max(max_mag, std::abs(v));
    const double floor = -1e-8 * max_mag;
    double min_v = 0.0;
    for (double v : rho.values) min_v = std::min(min_v, v);
    if (min_v < floor) throw negative_density(min_v);
    const double s = kahan_accumulate(rho.values.size(), [&](size_t i) {
        return std::pow(std::max(rho.values[i], 0.0), p);
    });
    return rho.grid.volume() * s / static_cast<double>(rho.values.size());
}

double spectral_gradient_sq_integral(const RealField& u) {
    const SpectralField c = forward_transform(u);
    const Grid3& g = u.grid;
    double s = 0.0;
    for (int s1 = 0; s1 < g.n1(); ++s1)
        for (int s2 = 0; s2 < g.n2(); ++s2)
            for (int s3 = 0; s3 < g.n3(); ++s3)
                s += laplacian_symbol(g, g.mode(s1, s2, s3)) *
                     std::norm(c.coeffs[static_cast<size_t>(g.index(s1, s2, s3))]);
    return g.volume() * s;
}

SpectralField mode_filter(const SpectralField& c, int k1_max, int k2_max, int k3_max) {
    const Grid3& g = c.grid;
    SpectralField out = c;
    for (int s1 = 0; s1 < g.n1(); ++s1)
        for (int s2 = 0; s2 < g.n2(); ++s2)
            for (int s3 = 0; s3 < g.n3(); ++s3) {
                const ModeIndex k = g.mode(s1, s2, s3);
                if (std::abs(k.k1) > k1_max || std::abs(k.k2) > k2_max || std::abs(k.k3) > k3_max)
                    out.coeffs[static_cast<size_t>(g.index(s1, s2, s3))] = {0.0, 0.0};
            }
    return out;
}

RealField mode_filter(const RealField& f, int k1_max, int k2_max, int k3_max) {
    return inverse_transform(mode_filter(forward_transform(f), k1_max, k2_max, k3_max));
}

double dot_l2(const RealField& a, const RealField& b) {
    if (a.grid != b.grid) throw grid_mismatch();
    const double s = kahan_accumulate(a.values.size(),
                                      [&](size_t i) { return a.values[i] * b.values[i]; });
    return a.grid.volume() * s / static_cast<double>(a.values.size());
}

double norm_l2(const RealField& f) { return std::sqrt(std::max(0.0, dot_l2(f, f))); }

RealField lincomb(double a, const RealField& f, double b, const RealField& g) {
    if (f.grid != g.grid) throw grid_mismatch();
    RealField out(f.grid);
    for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = a * f.values[i] + b * g.values[i];
    return out;
}

RealField multiply(const RealField& a, const RealField& b) {
    if (a.grid != b.grid) throw grid_mismatch();
    RealField out(a.grid);
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] * b.values[i];
    return out;
}

}  // namespace tfw
