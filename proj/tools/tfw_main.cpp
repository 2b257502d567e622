#include <CLI11.hpp>

#include "tfw/cli.hpp"

namespace {

void add_common(CLI::App* cmd, tfw::CliOptions& opts) {
    cmd->add_option("--config", opts.config_file, "configuration file (key = value sections)");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--format", opts.format, "output format: csv or json");
    cmd->add_option("--threads", opts.threads, "worker threads for per-N fan-out");
    cmd->add_option("--set", opts.overrides, "override, e.g. --set scf.tolerance=1e-6")
        ->take_all();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic orbital-free ground states of 2D crystal slabs and their "
                 "1D homogenized limit"};
    app.require_subcommand(1);

    tfw::CliOptions o3, o1, oh, ov;
    auto* solve3d = app.add_subcommand("solve3d", "self-consistent 3D ground state");
    add_common(solve3d, o3);
    auto* solve1d = app.add_subcommand("solve1d", "self-consistent 1D limit ground state");
    add_common(solve1d, o1);
    auto* homogenize = app.add_subcommand("homogenize", "m_N convergence study with rate fits");
    add_common(homogenize, oh);
    auto* validate = app.add_subcommand("validate", "run the invariant and oracle suite");
    add_common(validate, ov);
    validate->add_option("--only", ov.only_suite, "run a single suite");
    validate
        ->add_flag("--inject-poisson-sign-error", ov.inject_poisson_sign_error,
                   "fault-injection hook for the identity checks")
        ->group("");  // hidden

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve3d->parsed()) return tfw::cmd_solve3d(o3);
        if (solve1d->parsed()) return tfw::cmd_solve1d(o1);
        if (homogenize->parsed()) return tfw::cmd_homogenize(oh);
        if (validate->parsed()) return tfw::cmd_validate(ov);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
