#include "tfw/scf.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace tfw {
namespace {

RealField combined_potential(const RealField& u_prev_pow, const RealField& phi) {
    if (u_prev_pow.grid != phi.grid) throw grid_mismatch();
    return lincomb(1.0, u_prev_pow, 1.0, phi);
}

// -laplace(v) + V v with the Laplacian applied spectrally.
RealField apply_operator(const RealField& pot, const RealField& v) {
    if (pot.grid != v.grid) throw grid_mismatch();
    const Grid3& g = v.grid;
    SpectralField c = forward_transform(v);
    for (int s1 = 0; s1 < g.n1(); ++s1)
        for (int s2 = 0; s2 < g.n2(); ++s2)
            for (int s3 = 0; s3 < g.n3(); ++s3)
                c.coeffs[static_cast<size_t>(g.index(s1, s2, s3))] *=
                    laplacian_symbol(g, g.mode(s1, s2, s3));
    RealField out = inverse_transform(c);
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += pot.values[i] * v.values[i];
    return out;
}

// (-laplace + shift)^{-1}, the free-operator preconditioner.
RealField precondition(const RealField& r, double shift) {
    const Grid3& g = r.grid;
    SpectralField c = forward_transform(r);
    for (int s1 = 0; s1 < g.n1(); ++s1)
        for (int s2 = 0; s2 < g.n2(); ++s2)
            for (int s3 = 0; s3 < g.n3(); ++s3)
                c.coeffs[static_cast<size_t>(g.index(s1, s2, s3))] /=
                    laplacian_symbol(g, g.mode(s1, s2, s3)) + shift;
    return inverse_transform(c);
}

void scale_inplace(RealField& f, double a) {
    for (double& v : f.values) v *= a;
}

void axpy_inplace(RealField& y, double a, const RealField& x) {
    for (size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
}

EigenPair lobpcg_lowest(const RealField& pot, const ScfConfig& cfg, const RealField& guess) {
    const Grid3& g = pot.grid;

    double vmin = pot.values[0];
    for (double v : pot.values) vmin = std::min(vmin, v);
    const double shift = 1.0 + std::max(0.0, -vmin);

    RealField x = guess;
    double xn = norm_l2(x);
    if (!(xn > 0.0)) {
        for (double& v : x.values) v = 1.0;
        xn = norm_l2(x);
    }
    scale_inplace(x, 1.0 / xn);

    RealField hx = apply_operator(pot, x);
    double lam = dot_l2(x, hx);
    std::optional<RealField> p;
    double res_norm = std::numeric_limits<double>::infinity();

    for (int it = 0; it < cfg.eigensolver_max_iter; ++it) {
        RealField r = lincomb(1.0, hx, -lam, x);
        res_norm = norm_l2(r);
        if (res_norm <= cfg.eigensolver_tol) {
            if (integrate(x) < 0.0) scale_inplace(x, -1.0);
            return {lam, std::move(x)};
        }

        RealField w = precondition(r, shift);

        // Orthonormal basis {x, w, p} by modified Gram-Schmidt; directions
        // that collapse numerically are dropped.
        std::vector<RealField> basis{x};
        auto push_dir = [&](RealField cand) {
            const double orig = norm_l2(cand);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& b : basis) axpy_inplace(cand, -dot_l2(b, cand), b);
            const double n = norm_l2(cand);
            if (n > 1e-12 * std::max(orig, 1e-300)) {
                scale_inplace(cand, 1.0 / n);
                basis.push_back(std::move(cand));
            }
        };
        push_dir(std::move(w));
        if (p) push_dir(*p);

        const int dim = static_cast<int>(basis.size());
        if (dim == 1) {
            // Preconditioned residual vanished inside span{x}: stalled.
            break;
        }
        std::vector<RealField> hbasis;
        hbasis.push_back(hx);
        for (int i = 1; i < dim; ++i) hbasis.push_back(apply_operator(pot, basis[i]));

        Eigen::MatrixXd a(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                const double v = dot_l2(basis[i], hbasis[j]);
                a(i, j) = v;
                a(j, i) = v;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        const Eigen::VectorXd y = es.eigenvectors().col(0);
        lam = es.eigenvalues()(0);

        RealField xnew(g), hxnew(g), pnew(g);
        for (int i = 0; i < dim; ++i) {
            axpy_inplace(xnew, y(i), basis[i]);
            axpy_inplace(hxnew, y(i), hbasis[i]);
            if (i >= 1) axpy_inplace(pnew, y(i), basis[i]);
        }
        const double nx = norm_l2(xnew);
        scale_inplace(xnew, 1.0 / nx);
        scale_inplace(hxnew, 1.0 / nx);
        const double np = norm_l2(pnew);
        if (np > 0.0) {
            scale_inplace(pnew, 1.0 / np);
            p = std::move(pnew);
        } else {
            p.reset();
        }
        x = std::move(xnew);
        hx = std::move(hxnew);
    }
    throw eigensolver_stalled(cfg.eigensolver_max_iter, res_norm);
}

struct EnergyTerms {
    double kinetic_grad, kinetic_tf, hartree;
    double total() const { return kinetic_grad + kinetic_tf + hartree; }
};

constexpr double kPi = 3.14159265358979323846;

// Two transforms per evaluation; this sits inside the line search.
EnergyTerms energy_of(const RealField& u, const RealField& m, double p) {
    const Grid3& g = u.grid;
    EnergyTerms e{};

    const SpectralField cu = forward_transform(u);
    double kin = 0.0;
    for (int s1 = 0; s1 < g.n1(); ++s1)
        for (int s2 = 0; s2 < g.n2(); ++s2)
            for (int s3 = 0; s3 < g.n3(); ++s3)
                kin += laplacian_symbol(g, g.mode(s1, s2, s3)) *
                       std::norm(cu.coeffs[static_cast<size_t>(g.index(s1, s2, s3))]);
    e.kinetic_grad = g.volume() * kin;

    RealField rho = multiply(u, u);
    e.kinetic_tf = power_integral(rho, p);

    const SpectralField cd = forward_transform(neutralized(lincomb(1.0, rho, -1.0, m)));
    double har = 0.0;
    for (int s1 = 0; s1 < g.n1(); ++s1)
        for (int s2 = 0; s2 < g.n2(); ++s2)
            for (int s3 = 0; s3 < g.n3(); ++s3) {
                const double sym = laplacian_symbol(g, g.mode(s1, s2, s3));
                if (sym <= 0.0) continue;
                har += 4.0 * kPi *
                       std::norm(cd.coeffs[static_cast<size_t>(g.index(s1, s2, s3))]) / sym;
            }
    e.hartree = 0.5 * g.volume() * har;
    return e;
}

}  // namespace

void ScfConfig::validate() const {
    if (!(tolerance > 0.0)) throw config_error("scf.tolerance", "must be > 0");
    if (max_iterations < 1) throw config_error("scf.max_iterations", "must be >= 1");
    if (!(mixing > 0.0 && mixing <= 1.0)) throw config_error("scf.mixing", "must be in (0, 1]");
    if (!(eigensolver_tol > 0.0)) throw config_error("scf.eigensolver_tol", "must be > 0");
    if (eigensolver_max_iter < 1) throw config_error("scf.eigensolver_max_iter", "must be >= 1");
    if (!(kinetic_exponent > 1.5))
        throw config_error("scf.kinetic_exponent", "must be > 3/2");
    if (anderson_depth < 1) throw config_error("scf.anderson_depth", "must be >= 1");
}

RealField apply_hamiltonian(const RealField& u_prev_pow, const RealField& phi,
                            const RealField& v) {
    return apply_operator(combined_potential(u_prev_pow, phi), v);
}

EigenPair lowest_eigenpair(const RealField& u_prev_pow, const RealField& phi,
                           const ScfConfig& config, const RealField& initial_guess) {
    config.validate();
    EigenPair pair = lobpcg_lowest(combined_potential(u_prev_pow, phi), config, initial_guess);
    const double n = norm_l2(pair.vector);
    scale_inplace(pair.vector, 1.0 / n);
    return pair;
}

ScfResult scf_solve(const NuclearModel& m, const Grid3& grid, const ScfConfig& config) {
    config.validate();
    const RealField msamp = m.sample(grid);

    double mmax = 0.0, mmin = 0.0;
    for (double v : msamp.values) {
        mmax = std::max(mmax, std::abs(v));
        mmin = std::min(mmin, v);
    }
    if (mmin < -1e-8 * mmax) throw error("nuclear density has negative samples");
    const double charge = integrate(msamp);
    if (!(charge > 0.0)) throw error("nuclear model must carry positive total charge");

    const double p = config.kinetic_exponent;
    const double sqz = std::sqrt(charge);

    RealField u(grid);
    for (double& v : u.values) v = sqz / std::sqrt(grid.volume());

    auto renormalize = [&](RealField& f) {
        if (config.iterate_filter) {
            const auto& k = *config.iterate_filter;
            f = mode_filter(f, k[0], k[1], k[2]);
        }
        const double n2 = integrate(multiply(f, f));
        scale_inplace(f, sqz / std::sqrt(n2));
        if (integrate(f) < 0.0) scale_inplace(f, -1.0);
    };

    auto lin_coeff = [&](const RealField& v) {
        RealField out(grid);
        for (size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = p * std::pow(std::abs(v.values[i]), 2.0 * p - 2.0);
        return out;
    };

    double e_cur = energy_of(u, msamp, p).total();

    ScfResult result;
    result.residual_trace.reserve(static_cast<size_t>(config.max_iterations));

    std::deque<RealField> du_hist, dr_hist;
    std::optional<RealField> prev_u, prev_r;
    double lambda = 0.0;
    int grow_streak = 0;
    double prev_dn = std::numeric_limits<double>::infinity();
    bool converged = false;

    const double aa_switch = 0.5;  // enable Anderson once ||r||/sqrt(Z) is below this

    for (int it = 0; it < config.max_iterations; ++it) {
        RealField rho = multiply(u, u);
        NeutralField src(neutralized(lincomb(1.0, rho, -1.0, msamp)));
        RealField phi = solve_poisson(src);
        if (config.phi_gauge_offset != 0.0)
            for (double& v : phi.values) v += config.phi_gauge_offset;

        EigenPair pair = lowest_eigenpair(lin_coeff(u), phi, config, u);
        lambda = pair.value;
        RealField f = pair.vector;
        scale_inplace(f, sqz);
        RealField r = lincomb(1.0, f, -1.0, u);
        const double rn = norm_l2(r);

        auto line_search_step = [&]() {
            double t = config.mixing;
            RealField cand(grid);
            double e_cand = 0.0;
            while (true) {
                cand = lincomb(1.0, u, t, r);
                renormalize(cand);
                e_cand = energy_of(cand, msamp, p).total();
                if (e_cand < e_cur || t < 1e-8) break;
                t *= 0.5;
            }
            e_cur = e_cand;
            return cand;
        };

        RealField unext(grid);
        bool stepped = false;
        if (config.acceleration == ScfConfig::Acceleration::anderson && prev_r &&
            rn <= aa_switch * sqz) {
            du_hist.push_back(lincomb(1.0, u, -1.0, *prev_u));
            dr_hist.push_back(lincomb(1.0, r, -1.0, *prev_r));
            while (static_cast<int>(du_hist.size()) > config.anderson_depth) {
                du_hist.pop_front();
                dr_hist.pop_front();
            }
            const auto nvals = static_cast<Eigen::Index>(u.values.size());
            const auto depth = static_cast<Eigen::Index>(dr_hist.size());
            Eigen::MatrixXd rm(nvals, depth);
            for (Eigen::Index c = 0; c < depth; ++c)
                for (Eigen::Index i = 0; i < nvals; ++i)
                    rm(i, c) = dr_hist[static_cast<size_t>(c)].values[static_cast<size_t>(i)];
            Eigen::Map<const Eigen::VectorXd> rv(r.values.data(), nvals);
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(rm);
            qr.setThreshold(1e-12);
            const Eigen::VectorXd gamma = qr.solve(rv);

            RealField cand = lincomb(1.0, u, config.mixing, r);
            for (Eigen::Index c = 0; c < depth; ++c) {
                axpy_inplace(cand, -gamma(c), du_hist[static_cast<size_t>(c)]);
                axpy_inplace(cand, -config.mixing * gamma(c), dr_hist[static_cast<size_t>(c)]);
            }
            renormalize(cand);
            const double e_cand = energy_of(cand, msamp, p).total();
            if (e_cand < e_cur + 1e-6 * std::abs(e_cur)) {
                unext = std::move(cand);
                e_cur = e_cand;
                stepped = true;
            } else {
                du_hist.clear();
                dr_hist.clear();
            }
        }
        if (!stepped) {
            if (config.acceleration == ScfConfig::Acceleration::plain) {
                unext = lincomb(1.0, u, config.mixing, r);
                renormalize(unext);
                e_cur = energy_of(unext, msamp, p).total();
            } else {
                unext = line_search_step();
            }
        }

        prev_u = u;
        prev_r = std::move(r);

        const double dn = norm_l2(lincomb(1.0, unext, -1.0, u));
        result.residual_trace.push_back(dn);
        const double drift = std::abs(integrate(multiply(unext, unext)) - charge) / charge;
        result.max_charge_drift = std::max(result.max_charge_drift, drift);

        u = std::move(unext);
        result.iterations = it + 1;

        if (dn <= config.tolerance && rn <= 10.0 * config.tolerance * sqz) {
            converged = true;
            break;
        }
        grow_streak = dn > prev_dn ? grow_streak + 1 : 0;
        prev_dn = dn;
        if (grow_streak >= 10)
            throw scf_diverged("fixed-point residual grew for 10 consecutive iterations");
    }
    if (!converged)
        throw scf_diverged("fixed point not reached in " + std::to_string(config.max_iterations) +
                           " iterations");

    result.u = u;
    result.rho = multiply(u, u);
    NeutralField src(neutralized(lincomb(1.0, result.rho, -1.0, msamp)));
    result.phi = solve_poisson(src);
    if (config.phi_gauge_offset != 0.0)
        for (double& v : result.phi.values) v += config.phi_gauge_offset;

    // Rayleigh quotient at the converged iterate; with the zero-mean gauge
    // this is the constraint multiplier.
    RealField hu = apply_operator(combined_potential(lin_coeff(u), result.phi), u);
    result.lambda = dot_l2(u, hu) / charge;

    const EnergyTerms e = energy_of(u, msamp, p);
    result.energy.kinetic_grad = e.kinetic_grad;
    result.energy.kinetic_tf = e.kinetic_tf;
    result.energy.hartree = e.hartree;
    result.energy.total = e.kinetic_grad + e.kinetic_tf + e.hartree;
    result.kinetic_exponent = p;
    return result;
}

ScfResult scf_solve_1d(const NuclearModel& mu, const Grid3& grid, const ScfConfig& config) {
    if (!grid.is_1d()) throw error("scf_solve_1d requires a collapsed grid (n1 = n2 = 1)");
    return scf_solve(mu, grid, config);
}

double el_residual(const ScfResult& result, const RealField& m_sampled) {
    const Grid3& g = result.u.grid;
    if (m_sampled.grid != g) throw grid_mismatch();
    const double p = result.kinetic_exponent;
    RealField rho = multiply(result.u, result.u);
    RealField phi = solve_poisson(NeutralField(neutralized(lincomb(1.0, rho, -1.0, m_sampled))));
    RealField nonlinear(g);
    for (size_t i = 0; i < nonlinear.values.size(); ++i)
        nonlinear.values[i] = p * std::pow(std::abs(result.u.values[i]), 2.0 * p - 2.0);
    RealField hu = apply_operator(lincomb(1.0, nonlinear, 1.0, phi), result.u);
    const double lambda = dot_l2(result.u, hu) / dot_l2(result.u, result.u);
    RealField res = lincomb(1.0, hu, -lambda, result.u);
    return norm_l2(res) / norm_l2(result.u);
}

double el_residual(const ScfResult& result, const NuclearModel& m) {
    return el_residual(result, m.sample(result.u.grid));
}

}  // namespace tfw
