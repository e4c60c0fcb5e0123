// SPDX-License-Identifier: MIT
#include "qshutter/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qshutter/errors.hpp"
#include "qshutter/units.hpp"

namespace qshutter {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object())
        throw ConfigError(where + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key \"" + it.key() + "\"");
}

double need_number(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key))
        throw ConfigError(where + ": missing required key \"" + key + "\"");
    if (!obj[key].is_number())
        throw ConfigError(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

}  // namespace

BarrierParams RunConfig::barrier_params() const {
    try {
        return BarrierParams(barrier.V0_eV, barrier.d_nm, barrier.m_ratio);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("barrier: ") + e.what());
    }
}

double k0_value(const RunConfig& cfg) {
    if (cfg.packet.k0_per_nm) return *cfg.packet.k0_per_nm;
    return units::wavenumber_from_energy(*cfg.packet.E0_eV, cfg.barrier.m_ratio);
}

PacketParams RunConfig::packet_params() const {
    const double k0 = k0_value(*this);
    return PacketParams(k0, packet.delta_over_k0 * k0);
}

RunConfig parse_config(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded())
        throw ConfigError("config: not valid JSON");
    require_keys(j, "config", {"barrier", "packet", "poles", "scan", "output"});
    if (!j.contains("barrier") || !j.contains("packet"))
        throw ConfigError("config: \"barrier\" and \"packet\" sections are required");

    RunConfig cfg;

    const json& b = j["barrier"];
    require_keys(b, "barrier", {"V0_eV", "d_nm", "m_ratio"});
    cfg.barrier.V0_eV = need_number(b, "barrier", "V0_eV");
    cfg.barrier.d_nm = need_number(b, "barrier", "d_nm");
    cfg.barrier.m_ratio = need_number(b, "barrier", "m_ratio");

    const json& p = j["packet"];
    require_keys(p, "packet", {"E0_eV", "k0_per_nm", "delta_over_k0"});
    if (p.contains("E0_eV") == p.contains("k0_per_nm"))
        throw ConfigError("packet: exactly one of E0_eV / k0_per_nm must be present");
    if (p.contains("E0_eV")) cfg.packet.E0_eV = need_number(p, "packet", "E0_eV");
    if (p.contains("k0_per_nm")) cfg.packet.k0_per_nm = need_number(p, "packet", "k0_per_nm");
    cfg.packet.delta_over_k0 = need_number(p, "packet", "delta_over_k0");
    if (cfg.packet.delta_over_k0 < 0.0)
        throw ConfigError("packet.delta_over_k0: must be >= 0");

    if (j.contains("poles")) {
        const json& q = j["poles"];
        require_keys(q, "poles", {"count_per_quadrant"});
        if (q.contains("count_per_quadrant")) {
            cfg.poles.count_per_quadrant = q["count_per_quadrant"].get<int>();
            if (cfg.poles.count_per_quadrant < 1)
                throw ConfigError("poles.count_per_quadrant: must be >= 1");
        }
    }

    if (j.contains("scan")) {
        const json& s = j["scan"];
        require_keys(s, "scan", {"t_min_over_tf", "t_max_over_tf", "steps", "x_obs_nm"});
        if (s.contains("t_min_over_tf")) cfg.scan.t_min_over_tf = s["t_min_over_tf"].get<double>();
        if (s.contains("t_max_over_tf")) cfg.scan.t_max_over_tf = s["t_max_over_tf"].get<double>();
        if (s.contains("steps")) cfg.scan.steps = s["steps"].get<int>();
        if (s.contains("x_obs_nm")) cfg.scan.x_obs_nm = s["x_obs_nm"].get<double>();
        if (!(cfg.scan.t_min_over_tf > 0.0))
            throw ConfigError("scan.t_min_over_tf: must be > 0");
        if (!(cfg.scan.t_max_over_tf > cfg.scan.t_min_over_tf))
            throw ConfigError("scan.t_max_over_tf: must exceed t_min_over_tf");
        if (cfg.scan.steps < 2)
            throw ConfigError("scan.steps: must be >= 2");
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        require_keys(o, "output", {"format", "path"});
        if (o.contains("format")) {
            cfg.output.format = o["format"].get<std::string>();
            if (*cfg.output.format != "csv" && *cfg.output.format != "json")
                throw ConfigError("output.format: must be \"csv\" or \"json\"");
        }
        if (o.contains("path")) cfg.output.path = o["path"].get<std::string>();
    }

    // surface invalid physics as config errors before any computation
    cfg.barrier_params();
    try {
        cfg.packet_params();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("packet: ") + e.what());
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace qshutter
