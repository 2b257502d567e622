#include "tfw/homogenization.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace tfw {

void HomogenizationPlan::validate() const {
    if (n_values.empty()) throw config_error("homogenization.n_values", "must not be empty");
    for (size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1) throw config_error("homogenization.n_values", "entries must be >= 1");
        if (i > 0 && n_values[i] <= n_values[i - 1])
            throw config_error("homogenization.n_values", "must be strictly increasing");
    }
    if (grid_n1_per_n < 2) throw config_error("homogenization.grid_n1_per_n", "must be >= 2");
    if (grid_n2 < 1) throw config_error("homogenization.grid_n2", "must be >= 1");
    if (grid_n3 < 2) throw config_error("homogenization.grid_n3", "must be >= 2");
    if (filter_k1_per_n < 0) throw config_error("homogenization.filter_k1_per_n", "must be >= 0");
    if (filter_k3 < 0) throw config_error("homogenization.filter_k3", "must be >= 0");
    if (threads < 1) throw config_error("threads", "must be >= 1");
    solver.validate();
}

RealField build_m_n(const NuclearModel& base, int n, const Grid3& grid) {
    return base.sample_scaled(grid, n);
}

std::vector<double> average_to_1d(const RealField& m) {
    const Grid3& g = m.grid;
    std::vector<double> out(static_cast<size_t>(g.n3()), 0.0);
    for (int k = 0; k < g.n3(); ++k) {
        double s = 0.0, c = 0.0;
        for (int i = 0; i < g.n1(); ++i)
            for (int j = 0; j < g.n2(); ++j) {
                const double y = m.at(i, j, k) - c;
                const double t = s + y;
                c = (t - s) - y;
                s = t;
            }
        out[static_cast<size_t>(k)] = s / (static_cast<double>(g.n1()) * g.n2());
    }
    return out;
}

std::vector<double> average_to_1d(const NuclearModel& m, const Grid3& grid) {
    return average_to_1d(m.sample(grid));
}

std::vector<double> trig_resample(const std::vector<double>& profile, int n_to) {
    const int n_from = static_cast<int>(profile.size());
    if (n_to == n_from) return profile;
    // Route through the collapsed-grid transform; pad or drop high modes.
    const UnitCell cell(1.0, 1.0);  // resampling is scale-free
    Grid3 gf(1, 1, n_from, cell), gt(1, 1, n_to, cell);
    RealField f(gf, profile);
    const SpectralField cf = forward_transform(f);
    SpectralField ct(gt);
    const int kmax = std::min(n_from / 2, n_to / 2);
    for (int k = -kmax + 1; k <= kmax; ++k) {
        ModeIndex mi{0, 0, k};
        ct.at_mode(mi) = cf.at_mode(mi);
    }
    // A dropped or kept Nyquist pair must stay conjugate-symmetric.
    ct.at_mode({0, 0, kmax}) = {ct.at_mode({0, 0, kmax}).real(), 0.0};
    return inverse_transform(ct).values;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw degenerate_fit("rate fit needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(points.size());
    for (const auto& [x, v] : points) {
        if (!(v > 0.0)) throw degenerate_fit("rate fit needs positive values");
        if (!(x > 0.0)) throw degenerate_fit("rate fit needs positive abscissae");
        const double lx = std::log(x), ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-14 * std::max(1.0, sxx * n))
        throw degenerate_fit("rate fit needs at least two distinct abscissae");
    RateFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double y_mean = sy / n;
    for (const auto& [x, v] : points) {
        const double ly = std::log(v);
        const double pred = fit.intercept + fit.slope * std::log(x);
        ss_res += (ly - pred) * (ly - pred);
        ss_tot += (ly - y_mean) * (ly - y_mean);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

namespace {

RealField study_density(const HomogenizationPlan& plan, int n) {
    const Grid3 grid = plan.grid_for(n);
    RealField m = build_m_n(plan.base_model, n, grid);
    if (plan.mode_filter) m = mode_filter(m, plan.filter_k1_per_n * n, 0, plan.filter_k3);
    return m;
}

RealField broadcast_profile(const std::vector<double>& profile, const Grid3& grid) {
    std::vector<double> resampled = trig_resample(profile, grid.n3());
    RealField out(grid);
    for (int i = 0; i < grid.n1(); ++i)
        for (int j = 0; j < grid.n2(); ++j)
            for (int k = 0; k < grid.n3(); ++k)
                out.at(i, j, k) = resampled[static_cast<size_t>(k)];
    return out;
}

}  // namespace

HomogenizationReport run_study(const HomogenizationPlan& plan) {
    plan.validate();
    HomogenizationReport report;

    // The 1D reference carries the slab average of the same sampled density
    // the 3D solves see, so total charges agree exactly across the study.
    std::vector<double> mu = average_to_1d(study_density(plan, plan.n_values.front()));
    const Grid3 grid1 = plan.grid_1d();
    const ScfResult res1 = scf_solve_1d(NuclearModel::x3_profile(mu), grid1, plan.solver);
    report.i0 = res1.energy.total;
    report.iterations_1d = res1.iterations;
    report.el_residual_1d = el_residual(res1, NuclearModel::x3_profile(mu));
    report.rho0_profile.assign(res1.rho.values.begin(), res1.rho.values.end());
    std::vector<double> u0_profile(res1.u.values.begin(), res1.u.values.end());

    struct PerN {
        ScfResult result;
        RealField m;
    };
    auto solve_one = [&](int n) {
        PerN out{ScfResult{}, study_density(plan, n)};
        out.result = scf_solve(NuclearModel::tabulated(out.m), plan.grid_for(n), plan.solver);
        return out;
    };

    std::vector<std::future<PerN>> futures;
    futures.reserve(plan.n_values.size());
    if (plan.threads > 1) {
        // Bounded fan-out; results are consumed strictly in n order.
        size_t launched = 0;
        std::vector<int> pending(plan.n_values.begin(), plan.n_values.end());
        for (; launched < pending.size() && launched < static_cast<size_t>(plan.threads);
             ++launched)
            futures.push_back(std::async(std::launch::async, solve_one, pending[launched]));
        for (size_t i = 0; i < pending.size(); ++i) {
            futures[i].wait();
            if (launched < pending.size())
                futures.push_back(std::async(std::launch::async, solve_one, pending[launched++]));
        }
    } else {
        for (int n : plan.n_values)
            futures.push_back(std::async(std::launch::deferred, solve_one, n));
    }

    for (size_t i = 0; i < plan.n_values.size(); ++i) {
        const int n = plan.n_values[i];
        PerN per;
        try {
            per = futures[i].get();
        } catch (const std::exception& e) {
            report.complete = false;
            report.failure = "n = " + std::to_string(n) + ": " + e.what();
            break;
        }
        const Grid3 grid = plan.grid_for(n);
        const RealField rho0_b = broadcast_profile(report.rho0_profile, grid);
        const RealField u0_b = broadcast_profile(u0_profile, grid);
        RealField e = lincomb(1.0, per.result.rho, -1.0, rho0_b);

        HomogenizationEntry entry;
        entry.n = n;
        entry.energy = per.result.energy.total;
        entry.err_l1 = lp_norm(e, 1.0);
        entry.err_l2 = lp_norm(e, 2.0);
        entry.err_linf = lp_norm(e, std::numeric_limits<double>::infinity());
        entry.err_grad_l2 =
            std::sqrt(spectral_gradient_sq_integral(lincomb(1.0, per.result.u, -1.0, u0_b)));
        entry.iterations = per.result.iterations;
        entry.el_residual = el_residual(per.result, per.m);
        report.per_n.push_back(entry);
        if (i + 1 == plan.n_values.size()) report.complete = true;
    }

    if (report.per_n.size() >= 3) {
        auto fit_quantity = [&](const std::string& name, auto&& getter) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& e : report.per_n) pts.emplace_back(e.n, getter(e));
            try {
                report.fitted_rates[name] = fit_rate(pts);
            } catch (const degenerate_fit&) {
                // nothing to fit (e.g. identically zero errors)
            }
        };
        fit_quantity("energy_gap",
                     [&](const HomogenizationEntry& e) { return std::abs(e.energy - report.i0); });
        fit_quantity("err_L1", [](const HomogenizationEntry& e) { return e.err_l1; });
        fit_quantity("err_L2", [](const HomogenizationEntry& e) { return e.err_l2; });
        fit_quantity("err_Linf", [](const HomogenizationEntry& e) { return e.err_linf; });
        fit_quantity("err_grad_L2", [](const HomogenizationEntry& e) { return e.err_grad_l2; });
    }
    return report;
}

}  // namespace tfw
