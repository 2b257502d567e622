#pragma once

#include <string>
#include <vector>

#include "tfw/config.hpp"
#include "tfw/validate.hpp"

namespace tfw {

// Exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitScfDiverged = 2;
inline constexpr int kExitEigensolverStalled = 3;
inline constexpr int kExitValidationFailed = 4;

struct CliOptions {
    std::string config_file;                // --config
    std::vector<std::string> overrides;     // --set section.key=value
    std::string out_dir;                    // --out
    std::string format;                     // --format
    int threads = 0;                        // --threads (0 = keep config)
    std::string only_suite;                 // validate --only
    bool inject_poisson_sign_error = false; // hidden test hook
};

/// Assemble the key store (file, then flag overrides) and parse it.
RunConfig load_run_config(const CliOptions& opts, KeyValueConfig& kv_out);

int cmd_solve3d(const CliOptions& opts);
int cmd_solve1d(const CliOptions& opts);
int cmd_homogenize(const CliOptions& opts);
int cmd_validate(const CliOptions& opts);

}  // namespace tfw
