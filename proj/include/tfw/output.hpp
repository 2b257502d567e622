#pragma once

#include <filesystem>
#include <string>

#include "tfw/config.hpp"

namespace tfw {

/// Fixed 17-significant-digit decimal form, stable across runs.
std::string format_double(double v);

void write_scf_result(const std::filesystem::path& dir, OutputFormat format,
                      const ScfResult& result, double el_residual_value, double total_charge);

/// x3 profile of the slab-averaged density, one row per grid point.
void write_density_profile(const std::filesystem::path& dir, const ScfResult& result);

/// Raw row-major dump: three int64 dims then doubles (opt-in).
void write_density_full(const std::filesystem::path& dir, const RealField& rho);

void write_homog_report(const std::filesystem::path& dir, OutputFormat format,
                        const HomogenizationReport& report);

/// Timestamped sidecar; the only output allowed to differ between reruns.
void write_run_metadata(const std::filesystem::path& dir, const std::string& command,
                        const KeyValueConfig& kv);

}  // namespace tfw
