#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tfw/green.hpp"
#include "tfw/homogenization.hpp"

namespace tfw {

/// Flat key store from an INI-style file ("[section]" + "key = value")
/// plus --set overrides. Lookups go through typed getters that attach the
/// dotted key path to any error.
class KeyValueConfig {
  public:
    static KeyValueConfig from_file(const std::filesystem::path& path);
    static KeyValueConfig empty() { return KeyValueConfig{}; }

    void set(const std::string& dotted_key, const std::string& value);
    void apply_override(const std::string& assignment);  // "section.key=value"

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<int> get_int_list(const std::string& key, std::vector<int> fallback) const;

    /// Keys actually present, for echoing into run metadata.
    const std::map<std::string, std::string>& entries() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

enum class OutputFormat { csv, json };

struct RunConfig {
    UnitCell cell{1.0, 2.0 * 3.14159265358979323846};
    int n1 = 32, n2 = 4, n3 = 64;
    NuclearModel nuclear =
        NuclearModel::separable_cos_gauss(1, 5.0 * 3.14159265358979323846 / 2.0, 8.0);
    std::string nuclear_kind = "separable_cos_gauss";
    double nuclear_amplitude = 5.0 * 3.14159265358979323846 / 2.0;
    double nuclear_gauss_width = 8.0;
    int nuclear_n = 1;
    int nuclear_fourier_harmonics = 0;
    double nuclear_value = 1.0;  // constant kind

    ScfConfig scf;
    HomogenizationPlan plan;
    GreenEvalConfig green;

    std::filesystem::path output_dir = ".";
    OutputFormat format = OutputFormat::csv;
    bool full_density = false;
    int threads = 1;

    Grid3 grid3d() const { return Grid3(n1, n2, n3, cell); }
    Grid3 grid1d() const { return Grid3(1, 1, n3, cell); }

    /// 1D nuclear profile for the limit model: the slab average of the
    /// configured model (closed form for the analytic kinds).
    NuclearModel nuclear_1d() const;
};

/// Build and validate a RunConfig; throws config_error naming the key path.
RunConfig parse_run_config(const KeyValueConfig& kv);

}  // namespace tfw
