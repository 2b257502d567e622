#include "tfw/output.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>

namespace tfw {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw error("cannot write " + path.string());
    return out;
}

json energy_json(const EnergyBreakdown& e) {
    return json{{"kinetic_grad", e.kinetic_grad},
                {"kinetic_tf", e.kinetic_tf},
                {"hartree", e.hartree},
                {"total", e.total}};
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_scf_result(const std::filesystem::path& dir, OutputFormat format,
                      const ScfResult& result, double el_residual_value, double total_charge) {
    if (format == OutputFormat::csv) {
        auto out = open_out(dir / "scf_result.csv");
        out << "field,value\n";
        out << "energy_kinetic_grad," << format_double(result.energy.kinetic_grad) << "\n";
        out << "energy_kinetic_tf," << format_double(result.energy.kinetic_tf) << "\n";
        out << "energy_hartree," << format_double(result.energy.hartree) << "\n";
        out << "energy_total," << format_double(result.energy.total) << "\n";
        out << "lambda," << format_double(result.lambda) << "\n";
        out << "iterations," << result.iterations << "\n";
        out << "el_residual," << format_double(el_residual_value) << "\n";
        out << "total_charge," << format_double(total_charge) << "\n";
        out << "max_charge_drift," << format_double(result.max_charge_drift) << "\n";
        for (size_t i = 0; i < result.residual_trace.size(); ++i)
            out << "residual_trace_" << i << "," << format_double(result.residual_trace[i])
                << "\n";
    } else {
        json j{{"energy", energy_json(result.energy)},
               {"lambda", result.lambda},
               {"iterations", result.iterations},
               {"el_residual", el_residual_value},
               {"total_charge", total_charge},
               {"max_charge_drift", result.max_charge_drift},
               {"residual_trace", result.residual_trace}};
        auto out = open_out(dir / "scf_result.json");
        out << j.dump(2) << "\n";
    }
}

void write_density_profile(const std::filesystem::path& dir, const ScfResult& result) {
    const Grid3& g = result.rho.grid;
    auto out = open_out(dir / "density.csv");
    out << "x3,rho\n";
    for (int k = 0; k < g.n3(); ++k) {
        double s = 0.0;
        for (int i = 0; i < g.n1(); ++i)
            for (int j = 0; j < g.n2(); ++j) s += result.rho.at(i, j, k);
        s /= static_cast<double>(g.n1()) * g.n2();
        out << format_double(g.coord(2, k)) << "," << format_double(s) << "\n";
    }
}

void write_density_full(const std::filesystem::path& dir, const RealField& rho) {
    auto out = open_out(dir / "density_full.bin");
    const std::int64_t dims[3] = {rho.grid.n1(), rho.grid.n2(), rho.grid.n3()};
    out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    out.write(reinterpret_cast<const char*>(rho.values.data()),
              static_cast<std::streamsize>(rho.values.size() * sizeof(double)));
}

void write_homog_report(const std::filesystem::path& dir, OutputFormat format,
                        const HomogenizationReport& report) {
    if (format == OutputFormat::csv) {
        {
            auto out = open_out(dir / "homog_report.csv");
            out << "N,I_N,err_L1,err_L2,err_Linf,err_grad_L2,iterations,residual\n";
            for (const auto& e : report.per_n)
                out << e.n << "," << format_double(e.energy) << "," << format_double(e.err_l1)
                    << "," << format_double(e.err_l2) << "," << format_double(e.err_linf) << ","
                    << format_double(e.err_grad_l2) << "," << e.iterations << ","
                    << format_double(e.el_residual) << "\n";
            // trailing 1D reference row, N = 0 sentinel
            out << 0 << "," << format_double(report.i0) << "," << format_double(0.0) << ","
                << format_double(0.0) << "," << format_double(0.0) << "," << format_double(0.0)
                << "," << report.iterations_1d << "," << format_double(report.el_residual_1d)
                << "\n";
        }
        {
            auto out = open_out(dir / "rates.csv");
            out << "quantity,slope,intercept,r_squared\n";
            for (const auto& [name, fit] : report.fitted_rates)
                out << name << "," << format_double(fit.slope) << ","
                    << format_double(fit.intercept) << "," << format_double(fit.r_squared) << "\n";
        }
    } else {
        json per_n = json::array();
        for (const auto& e : report.per_n)
            per_n.push_back(json{{"N", e.n},
                                 {"I_N", e.energy},
                                 {"err_L1", e.err_l1},
                                 {"err_L2", e.err_l2},
                                 {"err_Linf", e.err_linf},
                                 {"err_grad_L2", e.err_grad_l2},
                                 {"iterations", e.iterations},
                                 {"residual", e.el_residual}});
        json rates = json::object();
        for (const auto& [name, fit] : report.fitted_rates)
            rates[name] = json{{"slope", fit.slope},
                               {"intercept", fit.intercept},
                               {"r_squared", fit.r_squared}};
        json j{{"per_N", per_n},
               {"I_0", report.i0},
               {"iterations_1d", report.iterations_1d},
               {"residual_1d", report.el_residual_1d},
               {"rates", rates},
               {"complete", report.complete}};
        if (!report.failure.empty()) j["failure"] = report.failure;
        auto out = open_out(dir / "homog_report.json");
        out << j.dump(2) << "\n";
    }
}

void write_run_metadata(const std::filesystem::path& dir, const std::string& command,
                        const KeyValueConfig& kv) {
    json cfg = json::object();
    for (const auto& [k, v] : kv.entries()) cfg[k] = v;
    const auto now = std::chrono::system_clock::now();
    json j{{"command", command},
           {"timestamp_unix",
            std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()},
           {"config", cfg}};
    auto out = open_out(dir / "run_meta.json");
    out << j.dump(2) << "\n";
}

}  // namespace tfw
