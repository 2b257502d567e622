#include "tfw/green.hpp"

#include <cmath>
#include <vector>

namespace tfw {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct GaussRule {
    std::vector<double> nodes;    // on [-1/2, 1/2]
    std::vector<double> weights;  // summing to 1
};

// Gauss-Legendre by Newton iteration on P_n.
GaussRule gauss_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = 0.5 * x;
        r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

// Average over the unit-cell square of 1/|(v - y, z)|, square side q.
double cell_average_inv_r(double v1, double v2, double z, double q, const GaussRule& rule) {
    double s = 0.0;
    for (size_t a = 0; a < rule.nodes.size(); ++a) {
        const double y1 = v1 - q * rule.nodes[a];
        double row = 0.0;
        for (size_t b = 0; b < rule.nodes.size(); ++b) {
            const double y2 = v2 - q * rule.nodes[b];
            row += rule.weights[b] / std::sqrt(y1 * y1 + y2 * y2 + z * z);
        }
        s += rule.weights[a] * row;
    }
    return s;
}

double reduce_periodic(double x, double side) {
    const double r = std::remainder(x, side);
    return r;
}

struct GreenEvaluator {
    UnitCell cell;
    GreenEvalConfig cfg;
    GaussRule full, mid, coarse;

    GreenEvaluator(const UnitCell& c, const GreenEvalConfig& g)
        : cell(c), cfg(g), full(gauss_rule(g.quad_points)), mid(gauss_rule(4)), coarse(gauss_rule(2)) {
        cfg.validate();
    }

    // Lattice part of G at reduced coordinates: sum over sites of the point
    // potential screened by its uniform cell background. Far cells see a
    // smooth integrand, so the quadrature order is lowered with distance
    // (error falls off much faster than the cutoff truncation itself).
    double lattice_sum(double x1, double x2, double x3, bool include_origin_point) const {
        const double q = cell.q_side;
        const int cut = cfg.lattice_cutoff;
        const double cut2 = static_cast<double>(cut) * cut;
        double s = 0.0;
        for (int i = -cut; i <= cut; ++i) {
            for (int j = -cut; j <= cut; ++j) {
                if (static_cast<double>(i) * i + static_cast<double>(j) * j > cut2) continue;
                const double v1 = x1 - i * q;
                const double v2 = x2 - j * q;
                const double r2 = v1 * v1 + v2 * v2 + x3 * x3;
                const double r = std::sqrt(r2);
                const bool origin_site = (i == 0 && j == 0);
                if (r < 1e-9) throw singular_point();
                const GaussRule& rule = r > 6.0 * q ? coarse : (r > 3.0 * q ? mid : full);
                const double avg = cell_average_inv_r(v1, v2, x3, q, rule);
                if (origin_site && !include_origin_point)
                    s += -avg;
                else
                    s += 1.0 / r - avg;
            }
        }
        return s;
    }

    double green(const std::array<double, 3>& x) const {
        const double q = cell.q_side;
        const double x1 = reduce_periodic(x[0], q);
        const double x2 = reduce_periodic(x[1], q);
        return -2.0 * kPi / (q * q) * std::abs(x[2]) + lattice_sum(x1, x2, x[2], true);
    }

    double psi(const std::array<double, 3>& x) const {
        const double q = cell.q_side;
        const double x1 = reduce_periodic(x[0], q);
        const double x2 = reduce_periodic(x[1], q);
        return lattice_sum(x1, x2, x[2], false);
    }
};

}  // namespace

double eval_green_realspace(const std::array<double, 3>& x, const UnitCell& cell,
                            const GreenEvalConfig& cfg) {
    return GreenEvaluator(cell, cfg).green(x);
}

double green_psi(const std::array<double, 3>& x, const UnitCell& cell, const GreenEvalConfig& cfg) {
    return GreenEvaluator(cell, cfg).psi(x);
}

double validate_green_vs_spectral(const NeutralField& f, const GreenEvalConfig& cfg) {
    const Grid3& g = f.grid();
    const GreenEvaluator ev(g.cell(), cfg);
    const double h1 = g.spacing(0), h2 = g.spacing(1), h3 = g.spacing(2);

    // Difference table G((i - j)h + h/2); probes sit half a spacing off the
    // grid, which keeps every evaluation away from the charge sites.
    const int n1 = g.n1(), n2 = g.n2(), n3 = g.n3();
    std::vector<double> table(static_cast<size_t>(n1) * n2 * (2 * n3 - 1));
    for (int d1 = 0; d1 < n1; ++d1)
        for (int d2 = 0; d2 < n2; ++d2)
            for (int d3 = -(n3 - 1); d3 <= n3 - 1; ++d3) {
                const std::array<double, 3> dx{d1 * h1 + 0.5 * h1, d2 * h2 + 0.5 * h2,
                                               d3 * h3 + 0.5 * h3};
                table[(static_cast<size_t>(d1) * n2 + d2) * (2 * n3 - 1) + (d3 + n3 - 1)] =
                    ev.green(dx);
            }

    // Probe subset: stride so at most ~256 probes.
    auto stride_for = [](int n, int target) { return std::max(1, n / target); };
    const int st1 = stride_for(n1, 4), st2 = stride_for(n2, 4), st3 = stride_for(n3, 16);

    const RealField phi = solve_poisson(f);
    const SpectralField phi_hat = forward_transform(phi);

    std::vector<double> conv, spec;
    for (int p1 = 0; p1 < n1; p1 += st1)
        for (int p2 = 0; p2 < n2; p2 += st2)
            for (int p3 = 0; p3 < n3; p3 += st3) {
                // real-space convolution over the cell
                double s = 0.0;
                for (int j1 = 0; j1 < n1; ++j1)
                    for (int j2 = 0; j2 < n2; ++j2) {
                        const int d1 = ((p1 - j1) % n1 + n1) % n1;
                        const int d2 = ((p2 - j2) % n2 + n2) % n2;
                        const double* row =
                            &table[(static_cast<size_t>(d1) * n2 + d2) * (2 * n3 - 1)];
                        for (int j3 = 0; j3 < n3; ++j3)
                            s += row[p3 - j3 + n3 - 1] * f.field().at(j1, j2, j3);
                    }
                conv.push_back(s * g.volume() / static_cast<double>(g.size()));

                // spectral solution evaluated at the shifted probe point
                const std::array<double, 3> xp{g.coord(0, p1) + 0.5 * h1, g.coord(1, p2) + 0.5 * h2,
                                               g.coord(2, p3) + 0.5 * h3};
                std::complex<double> val{0.0, 0.0};
                for (int s1 = 0; s1 < n1; ++s1)
                    for (int s2 = 0; s2 < n2; ++s2)
                        for (int s3 = 0; s3 < n3; ++s3) {
                            const ModeIndex k = g.mode(s1, s2, s3);
                            const double phase =
                                2.0 * kPi *
                                (k.k1 * xp[0] / g.cell().q_side + k.k2 * xp[1] / g.cell().q_side +
                                 k.k3 * xp[2] / g.cell().length_x3);
                            val += phi_hat.coeffs[static_cast<size_t>(g.index(s1, s2, s3))] *
                                   std::complex<double>(std::cos(phase), std::sin(phase));
                        }
                spec.push_back(val.real());
            }

    double mean_c = 0.0, mean_s = 0.0;
    for (size_t i = 0; i < conv.size(); ++i) {
        mean_c += conv[i];
        mean_s += spec[i];
    }
    mean_c /= static_cast<double>(conv.size());
    mean_s /= static_cast<double>(spec.size());
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < conv.size(); ++i) {
        const double a = conv[i] - mean_c;
        const double b = spec[i] - mean_s;
        num += (a - b) * (a - b);
        den += b * b;
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

}  // namespace tfw
