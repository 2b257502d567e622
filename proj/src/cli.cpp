#include "tfw/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "tfw/output.hpp"

namespace tfw {
namespace {

int log_level() {
    const char* env = std::getenv("TFW_LOG");
    if (!env) return 1;
    const std::string v(env);
    if (v == "quiet" || v == "0") return 0;
    if (v == "debug" || v == "2") return 2;
    return 1;
}

void info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << msg << "\n";
}

int run_solve(const CliOptions& opts, bool one_dimensional) {
    KeyValueConfig kv;
    RunConfig rc;
    try {
        rc = load_run_config(opts, kv);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    std::filesystem::create_directories(rc.output_dir);

    const Grid3 grid = one_dimensional ? rc.grid1d() : rc.grid3d();
    const NuclearModel model = one_dimensional ? rc.nuclear_1d() : rc.nuclear;
    try {
        const ScfResult result = one_dimensional ? scf_solve_1d(model, grid, rc.scf)
                                                 : scf_solve(model, grid, rc.scf);
        const double el = el_residual(result, model);
        const double charge = integrate(result.rho);
        write_scf_result(rc.output_dir, rc.format, result, el, charge);
        write_density_profile(rc.output_dir, result);
        if (rc.full_density) write_density_full(rc.output_dir, result.rho);
        write_run_metadata(rc.output_dir, one_dimensional ? "solve1d" : "solve3d", kv);
        info("converged in " + std::to_string(result.iterations) +
             " iterations, E = " + format_double(result.energy.total) +
             ", lambda = " + format_double(result.lambda));
        return kExitOk;
    } catch (const eigensolver_stalled& e) {
        std::cerr << "eigensolver stalled: " << e.what() << "\n";
        return kExitEigensolverStalled;
    } catch (const scf_diverged& e) {
        std::cerr << "scf did not converge: " << e.what() << "\n";
        return kExitScfDiverged;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace

RunConfig load_run_config(const CliOptions& opts, KeyValueConfig& kv_out) {
    KeyValueConfig kv = opts.config_file.empty() ? KeyValueConfig::empty()
                                                 : KeyValueConfig::from_file(opts.config_file);
    for (const auto& ov : opts.overrides) kv.apply_override(ov);
    if (!opts.out_dir.empty()) kv.set("output.directory", opts.out_dir);
    if (!opts.format.empty()) kv.set("output.format", opts.format);
    if (opts.threads > 0) kv.set("threads", std::to_string(opts.threads));
    kv_out = kv;
    return parse_run_config(kv);
}

int cmd_solve3d(const CliOptions& opts) { return run_solve(opts, false); }

int cmd_solve1d(const CliOptions& opts) { return run_solve(opts, true); }

int cmd_homogenize(const CliOptions& opts) {
    KeyValueConfig kv;
    RunConfig rc;
    try {
        rc = load_run_config(opts, kv);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    std::filesystem::create_directories(rc.output_dir);
    try {
        const HomogenizationReport report = run_study(rc.plan);
        write_homog_report(rc.output_dir, rc.format, report);
        write_run_metadata(rc.output_dir, "homogenize", kv);
        if (!report.complete) {
            std::cerr << "study incomplete: " << report.failure << "\n";
            return kExitScfDiverged;
        }
        info("study complete, I_0 = " + format_double(report.i0));
        return kExitOk;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_validate(const CliOptions& opts) {
    ValidationOptions vopts;
    vopts.only_suite = opts.only_suite;
    vopts.inject_poisson_sign_error = opts.inject_poisson_sign_error;
    if (!opts.config_file.empty() || !opts.overrides.empty()) {
        KeyValueConfig kv;
        try {
            const RunConfig rc = load_run_config(opts, kv);
            vopts.green = rc.green;
        } catch (const config_error& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return kExitConfig;
        }
    }
    const auto results = run_validation(vopts);
    size_t failures = 0;
    std::printf("%-10s %-32s %-6s %s\n", "suite", "check", "status", "detail");
    for (const auto& r : results) {
        if (!r.passed) ++failures;
        std::printf("%-10s %-32s %-6s %s\n", r.suite.c_str(), r.name.c_str(),
                    r.passed ? "pass" : "FAIL", r.detail.c_str());
    }
    if (results.empty()) {
        std::cerr << "no checks matched suite '" << opts.only_suite << "'\n";
        return kExitConfig;
    }
    if (failures > 0) {
        std::printf("%zu check(s) failed\n", failures);
        return kExitValidationFailed;
    }
    std::printf("all %zu checks passed\n", results.size());
    return kExitOk;
}

}  // namespace tfw
