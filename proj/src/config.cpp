#include "tfw/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tfw {
namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path.string(), "cannot open config file");
    KeyValueConfig kv;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path.string() + ":" + std::to_string(lineno),
                               "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error(path.string() + ":" + std::to_string(lineno), "empty key");
        kv.set(section.empty() ? key : section + "." + key, value);
    }
    return kv;
}

void KeyValueConfig::set(const std::string& dotted_key, const std::string& value) {
    values_[dotted_key] = value;
}

void KeyValueConfig::apply_override(const std::string& assignment) {
    const size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw config_error(assignment, "override must look like section.key=value");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw config_error(key, "expected a number, got '" + it->second + "'");
    }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        size_t pos = 0;
        const int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw config_error(key, "expected an integer, got '" + it->second + "'");
    }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw config_error(key, "expected a boolean, got '" + it->second + "'");
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key,
                                              std::vector<int> fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<int> out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            size_t pos = 0;
            out.push_back(std::stoi(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw config_error(key, "expected a comma-separated integer list");
        }
    }
    if (out.empty()) throw config_error(key, "list must not be empty");
    return out;
}

NuclearModel RunConfig::nuclear_1d() const {
    constexpr double kPi = 3.14159265358979323846;
    if (nuclear_kind == "constant") return NuclearModel::constant(nuclear_value);
    // slab average of amplitude |cos(n pi x1)| is amplitude * 2/pi, exactly
    const Grid3 g = grid1d();
    std::vector<double> profile(static_cast<size_t>(n3));
    for (int k = 0; k < n3; ++k) {
        const double x3 = g.coord(2, k);
        profile[static_cast<size_t>(k)] =
            nuclear_amplitude * (2.0 / kPi) * std::exp(-x3 * x3 / nuclear_gauss_width);
    }
    return NuclearModel::x3_profile(std::move(profile));
}

RunConfig parse_run_config(const KeyValueConfig& kv) {
    RunConfig rc;

    const double q = kv.get_double("cell.q_side", 1.0);
    const double l = kv.get_double("cell.length_x3", 2.0 * 3.14159265358979323846);
    if (!(q > 0.0)) throw config_error("cell.q_side", "must be > 0");
    if (!(l > 0.0)) throw config_error("cell.length_x3", "must be > 0");
    rc.cell = UnitCell(q, l);

    rc.n1 = kv.get_int("grid.n1", rc.n1);
    rc.n2 = kv.get_int("grid.n2", rc.n2);
    rc.n3 = kv.get_int("grid.n3", rc.n3);
    for (auto [name, v] : {std::pair<const char*, int>{"grid.n1", rc.n1},
                           {"grid.n2", rc.n2},
                           {"grid.n3", rc.n3}}) {
        if (v < 1 || (v > 1 && v % 2 != 0)) throw config_error(name, "must be 1 or an even integer");
    }

    rc.nuclear_kind = kv.get_string("nuclear.kind", rc.nuclear_kind);
    rc.nuclear_amplitude = kv.get_double("nuclear.amplitude", rc.nuclear_amplitude);
    rc.nuclear_gauss_width = kv.get_double("nuclear.gauss_width", rc.nuclear_gauss_width);
    rc.nuclear_n = kv.get_int("nuclear.n", rc.nuclear_n);
    rc.nuclear_fourier_harmonics =
        kv.get_int("nuclear.fourier_harmonics", rc.nuclear_fourier_harmonics);
    rc.nuclear_value = kv.get_double("nuclear.value", rc.nuclear_value);
    if (rc.nuclear_kind == "separable_cos_gauss") {
        if (rc.nuclear_n < 1) throw config_error("nuclear.n", "must be >= 1");
        if (!(rc.nuclear_amplitude > 0.0)) throw config_error("nuclear.amplitude", "must be > 0");
        if (!(rc.nuclear_gauss_width > 0.0))
            throw config_error("nuclear.gauss_width", "must be > 0");
        if (rc.nuclear_fourier_harmonics < 0)
            throw config_error("nuclear.fourier_harmonics", "must be >= 0");
        rc.nuclear =
            NuclearModel::separable_cos_gauss(rc.nuclear_n, rc.nuclear_amplitude,
                                              rc.nuclear_gauss_width, rc.nuclear_fourier_harmonics);
    } else if (rc.nuclear_kind == "constant") {
        if (!(rc.nuclear_value > 0.0)) throw config_error("nuclear.value", "must be > 0");
        rc.nuclear = NuclearModel::constant(rc.nuclear_value);
    } else {
        throw config_error("nuclear.kind",
                           "unknown kind '" + rc.nuclear_kind +
                               "' (expected separable_cos_gauss or constant)");
    }

    rc.scf.tolerance = kv.get_double("scf.tolerance", rc.scf.tolerance);
    rc.scf.max_iterations = kv.get_int("scf.max_iterations", rc.scf.max_iterations);
    rc.scf.mixing = kv.get_double("scf.mixing", rc.scf.mixing);
    rc.scf.eigensolver_tol = kv.get_double("scf.eigensolver_tol", rc.scf.eigensolver_tol);
    rc.scf.eigensolver_max_iter =
        kv.get_int("scf.eigensolver_max_iter", rc.scf.eigensolver_max_iter);
    rc.scf.kinetic_exponent = kv.get_double("scf.kinetic_exponent", rc.scf.kinetic_exponent);
    rc.scf.anderson_depth = kv.get_int("scf.anderson_depth", rc.scf.anderson_depth);
    const std::string accel = kv.get_string("scf.acceleration", "anderson");
    if (accel == "plain")
        rc.scf.acceleration = ScfConfig::Acceleration::plain;
    else if (accel == "line_search")
        rc.scf.acceleration = ScfConfig::Acceleration::line_search;
    else if (accel == "anderson")
        rc.scf.acceleration = ScfConfig::Acceleration::anderson;
    else
        throw config_error("scf.acceleration", "expected plain, line_search or anderson");
    rc.scf.validate();

    rc.plan.cell = rc.cell;
    rc.plan.base_model = rc.nuclear;
    rc.plan.solver = rc.scf;
    rc.plan.n_values = kv.get_int_list("homogenization.n_values", rc.plan.n_values);
    rc.plan.grid_n1_per_n = kv.get_int("homogenization.grid_n1_per_n", rc.plan.grid_n1_per_n);
    rc.plan.grid_n2 = kv.get_int("homogenization.grid_n2", rc.plan.grid_n2);
    rc.plan.grid_n3 = kv.get_int("homogenization.grid_n3", rc.plan.grid_n3);
    rc.plan.mode_filter = kv.get_bool("homogenization.mode_filter", rc.plan.mode_filter);
    rc.plan.filter_k1_per_n = kv.get_int("homogenization.filter_k1_per_n", rc.plan.filter_k1_per_n);
    rc.plan.filter_k3 = kv.get_int("homogenization.filter_k3", rc.plan.filter_k3);

    rc.green.lattice_cutoff = kv.get_int("green.lattice_cutoff", rc.green.lattice_cutoff);
    rc.green.quad_points = kv.get_int("green.quad_points", rc.green.quad_points);
    if (rc.green.lattice_cutoff < 2) throw config_error("green.lattice_cutoff", "must be >= 2");
    if (rc.green.quad_points < 16) throw config_error("green.quad_points", "must be >= 16");

    const std::string fmt = kv.get_string("output.format", "csv");
    if (fmt == "csv")
        rc.format = OutputFormat::csv;
    else if (fmt == "json")
        rc.format = OutputFormat::json;
    else
        throw config_error("output.format", "expected csv or json");
    rc.full_density = kv.get_bool("output.full_density", rc.full_density);
    rc.output_dir = kv.get_string("output.directory", ".");

    rc.threads = kv.get_int("threads", rc.threads);
    if (rc.threads < 1) throw config_error("threads", "must be >= 1");
    rc.plan.threads = rc.threads;

    rc.plan.validate();
    return rc;
}

}  // namespace tfw
