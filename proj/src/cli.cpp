// SPDX-License-Identifier: MIT
#include "qshutter/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qshutter/config.hpp"
#include "qshutter/diagnostics.hpp"
#include "qshutter/errors.hpp"
#include "qshutter/oracles.hpp"
#include "qshutter/pole_table_io.hpp"
#include "qshutter/units.hpp"

namespace qshutter {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::string g12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes to `path`, or to `fallback` when the path is empty.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file \"" + path + "\"");
            out_ = &file_;
        } else {
            out_ = &fallback;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

void check_format(const RunConfig& cfg, const std::string& cli_format,
                  const std::string& required, const std::string& cmd) {
    const std::string fmt =
        !cli_format.empty() ? cli_format : cfg.output.format.value_or(required);
    if (fmt != required)
        throw ConfigError(cmd + " emits " + required + " only (got \"" + fmt + "\")");
}

PoleTable obtain_table(const RunConfig& cfg, const std::string& cache_path,
                       std::ostream& err) {
    const BarrierParams b = cfg.barrier_params();
    const int count = cfg.poles.count_per_quadrant;
    if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
        const std::string text = read_file(cache_path);
        if (pole_table_header_matches(text, b, count)) {
            std::istringstream in(text);
            return load_pole_table(in);
        }
        err << "qshutter: pole cache \"" << cache_path << "\" is stale, recomputing\n";
    }
    PoleTable table = find_poles(b, count);
    if (!cache_path.empty()) {
        std::ofstream out(cache_path);
        if (out) save_pole_table(table, out);
    }
    return table;
}

int cmd_poles(const RunConfig& cfg, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
    const BarrierParams b = cfg.barrier_params();
    const std::string target = !out_path.empty() ? out_path : cfg.output.path.value_or("");
    if (!target.empty() && std::filesystem::exists(target) &&
        pole_table_header_matches(read_file(target), b, cfg.poles.count_per_quadrant)) {
        out << "cache hit: " << target << " already holds this pole table\n";
        return kExitOk;
    }
    const PoleTable table = find_poles(b, cfg.poles.count_per_quadrant);
    if (target.empty()) {
        save_pole_table(table, out);
    } else {
        std::ofstream file(target);
        if (!file) throw ConfigError("cannot open output file \"" + target + "\"");
        save_pole_table(table, file);
        out << "wrote " << table.poles.size() << " poles to " << target << "\n";
    }
    (void)err;
    return kExitOk;
}

int cmd_density(const RunConfig& cfg, const std::string& out_path,
                const std::string& cache, std::ostream& out, std::ostream& err) {
    const BarrierParams b = cfg.barrier_params();
    const PacketParams packet = cfg.packet_params();
    const PoleTable table = obtain_table(cfg, cache, err);
    const ShutterProblem prob{b, packet, &table};
    const double tf = prob.t_f();
    const auto grid = uniform_grid(cfg.scan.t_min_over_tf * tf,
                                   cfg.scan.t_max_over_tf * tf, cfg.scan.steps);
    OutputTarget target(!out_path.empty() ? out_path : cfg.output.path.value_or(""), out);
    std::ostream& os = target.stream();
    os << "t_fs,t_over_tf,psi_re,psi_im,density\n";
    for (double t : grid) {
        Complex p;
        try {
            p = prob.psi(cfg.x_obs(), t);
        } catch (const Error& e) {
            err << "qshutter: numeric error at t=" << g12(t) << " fs: " << e.what() << "\n";
            return kExitNumeric;
        }
        os << g12(t) << ',' << g12(t / tf) << ',' << g12(p.real()) << ','
           << g12(p.imag()) << ',' << g12(std::norm(p)) << '\n';
    }
    return kExitOk;
}

int cmd_diagnose(const RunConfig& cfg, const std::string& out_path,
                 const std::string& cache, std::ostream& out, std::ostream& err) {
    const BarrierParams b = cfg.barrier_params();
    const PacketParams packet = cfg.packet_params();
    const PoleTable table = obtain_table(cfg, cache, err);
    const ShutterProblem prob{b, packet, &table};
    const double tf = prob.t_f();

    const ResonancePeak peak = find_peak(prob, cfg.x_obs(), cfg.scan.t_min_over_tf * tf,
                                         cfg.scan.t_max_over_tf * tf, cfg.scan.steps);
    const double omega = local_frequency(prob, cfg.x_obs(), peak.t_p);
    const double sigma = bandwidth(prob, cfg.x_obs(), peak.t_p);
    const double omega_v0 = b.V0 / units::constants().hbar;

    nlohmann::ordered_json j;
    j["t_p_fs"] = peak.t_p;
    j["t_p_over_tf"] = peak.t_p_over_tf;
    j["peak_density"] = peak.peak_density;
    if (prob.mode() == Mode::packet) {
        const TransmissionSplit split = transmission_split(packet, b);
        j["p_under"] = split.p_under;
        j["p_over"] = split.p_over;
    }
    j["omega_av_at_tp"] = omega;
    j["omega_ratio"] = omega / omega_v0;
    j["sigma_at_tp"] = sigma;
    j["mean_energy_eV"] = mean_energy(packet, b.m_ratio);
    if (prob.mode() == Mode::cutoff) {
        const Complex t_k0 = transmission_amplitude(Complex{packet.k0, 0.0}, b);
        j["asymptotic_density"] = std::norm(t_k0);
    }
    j["regime"] = (omega / omega_v0 > 1.0) ? "non-tunneling" : "tunneling";

    OutputTarget target(!out_path.empty() ? out_path : cfg.output.path.value_or(""), out);
    target.stream() << j.dump(2) << "\n";
    return kExitOk;
}

struct CheckReport {
    bool all_pass = true;
    void report(std::ostream& out, const std::string& name, bool pass, double achieved,
                double required) {
        out << (pass ? "PASS " : "FAIL ") << name << ": achieved " << achieved
            << " (required <= " << required << ")\n";
        all_pass = all_pass && pass;
    }
};

int cmd_verify(const RunConfig& cfg, const std::string& cache, std::ostream& out,
               std::ostream& err) {
    const BarrierParams b = cfg.barrier_params();
    const PacketParams packet = cfg.packet_params();
    const PoleTable table = obtain_table(cfg, cache, err);
    const double k0 = packet.k0;
    const double tf = units::free_passage_time(b.d, k0, b.m_ratio);
    CheckReport rep;

    {  // M closed form vs defining integral at pole arguments
        double worst = 0.0;
        const int count = std::min(20, table.count_per_quadrant);
        for (int n = 1; n <= count; ++n) {
            const Complex q = table.pole(n).k;
            const Complex closed = m_function(b.d, q, 0.3 * tf, b.m_ratio);
            const Complex integral = oracles::m_quadrature(b.d, q, 0.3 * tf, b.m_ratio);
            worst = std::max(worst, std::abs(closed - integral) / std::abs(closed));
        }
        rep.report(out, "m_function vs quadrature", worst <= 1e-8, worst, 1e-8);
    }

    {  // residue routes
        double worst_gp = 0.0, worst_eig = 0.0;
        const int count = std::min(20, table.count_per_quadrant);
        for (int n = 1; n <= count; ++n) {
            const Complex kn = table.pole(n).k;
            const Complex r_exp = residue_explicit(kn, b);
            const Complex r_gp = std::exp(Complex{0.0, -1.0} * kn * b.d) / g_derivative(kn, b);
            const Complex r_eig = residue_eigenfunction(kn, b);
            worst_gp = std::max(worst_gp, std::abs(r_exp - r_gp) / std::abs(r_exp));
            worst_eig = std::max(worst_eig, std::abs(r_exp - r_eig) / std::abs(r_exp));
        }
        rep.report(out, "residue explicit vs 1/g'", worst_gp <= 1e-10, worst_gp, 1e-10);
        rep.report(out, "residue explicit vs eigenfunction", worst_eig <= 1e-8, worst_eig,
                   1e-8);
    }

    {  // Mittag-Leffler partial sum against exact T(k0)
        const Complex exact = transmission_amplitude(Complex{k0, 0.0}, b);
        const double diff = std::abs(mittag_leffler_T(k0, table) - exact);
        rep.report(out, "Mittag-Leffler N=" + std::to_string(table.count_per_quadrant) +
                            " vs T(k0)",
                   diff <= 1e-4, diff, 1e-4);
    }

    if (!packet.cutoff_mode()) {  // spectral representation equivalence
        double worst = 0.0;
        const ShutterProblem prob{b, packet, &table};
        for (int ix = 0; ix < 5; ++ix)
            for (int it = 0; it < 5; ++it) {
                const double x = b.d + 10.0 * ix / 4.0;
                const double t = (0.05 + (3.0 - 0.05) * it / 4.0) * tf;
                const Complex an = prob.psi(x, t);
                const Complex sp = oracles::spectral_psi(x, t, packet, b);
                worst = std::max(worst, std::abs(an - sp) / std::abs(an));
            }
        rep.report(out, "psi_packet vs spectral quadrature", worst <= 1e-6, worst, 1e-6);
    } else {
        out << "SKIP psi_packet vs spectral quadrature: cutoff mode\n";
    }

    if (!packet.cutoff_mode()) {  // grid solver cross-check
        const ShutterProblem prob{b, packet, &table};
        const auto grid_cfg = oracles::default_grid(packet, b, cfg.x_obs(), 2.0 * tf);
        const auto t_grid = uniform_grid(0.05 * tf, 2.0 * tf, 60);
        const auto run =
            oracles::crank_nicolson_density(cfg.x_obs(), t_grid, packet, b, grid_cfg);
        double peak = 0.0, worst = 0.0;
        std::vector<double> analytic(run.series.t_fs.size());
        for (std::size_t i = 0; i < run.series.t_fs.size(); ++i) {
            analytic[i] = std::norm(prob.psi(run.series.x, run.series.t_fs[i]));
            peak = std::max(peak, analytic[i]);
        }
        for (std::size_t i = 0; i < analytic.size(); ++i)
            worst = std::max(worst, std::abs(analytic[i] - run.series.density[i]));
        rep.report(out, "Crank-Nicolson vs analytic (fraction of peak)",
                   worst <= 0.03 * peak, worst / peak, 0.03);
    } else {
        out << "SKIP Crank-Nicolson cross-check: cutoff mode\n";
    }

    {  // delta -> 0 limit recovers the cutoff solution
        const auto pair = delta_limit_check(EvaluationPoint{cfg.x_obs(), 0.3 * tf}, b, k0,
                                            table, 1e-4 * k0);
        const double rel = std::abs(pair.first - pair.second) / std::abs(pair.second);
        rep.report(out, "delta->0 rescaled limit (delta/k0=1e-4)", rel <= 1e-3, rel, 1e-3);
    }

    out << (rep.all_pass ? "verification: all checks passed\n"
                         : "verification: FAILURES present\n");
    return rep.all_pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"semi-analytic transient tunneling through a rectangular barrier"};
    app.require_subcommand(1);

    std::string config_path, output_path, format, poles_cache;
    app.add_option("--config", config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--output", output_path, "output file (default stdout)");
    app.add_option("--format", format, "csv|json where applicable")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--poles-cache", poles_cache, "pole table cache file");

    auto* sub_poles = app.add_subcommand("poles", "generate the pole/residue table");
    auto* sub_density = app.add_subcommand("density", "density time series at x_obs");
    auto* sub_diagnose = app.add_subcommand("diagnose", "peak, probabilities, frequencies");
    auto* sub_verify = app.add_subcommand("verify", "run the oracle-equivalence suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitOk;
        }
        err << "qshutter: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        const RunConfig cfg = load_config_file(config_path);
        if (sub_poles->parsed()) {
            check_format(cfg, format, "json", "poles");
            return cmd_poles(cfg, output_path, out, err);
        }
        if (sub_density->parsed()) {
            check_format(cfg, format, "csv", "density");
            return cmd_density(cfg, output_path, poles_cache, out, err);
        }
        if (sub_diagnose->parsed()) {
            check_format(cfg, format, "json", "diagnose");
            return cmd_diagnose(cfg, output_path, poles_cache, out, err);
        }
        check_format(cfg, format, "json", "verify");
        return cmd_verify(cfg, poles_cache, out, err);
    } catch (const ConfigError& e) {
        err << "qshutter: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        err << "qshutter: numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace qshutter
