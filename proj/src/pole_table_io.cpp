// SPDX-License-Identifier: MIT
#include "qshutter/pole_table_io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "qshutter/errors.hpp"

namespace qshutter {

namespace {

std::string f17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void save_pole_table(const PoleTable& table, std::ostream& out) {
    out << "{\n  \"header\": {";
    out << "\"V0_eV\": " << f17(table.params.V0);
    out << ", \"d_nm\": " << f17(table.params.d);
    out << ", \"m_ratio\": " << f17(table.params.m_ratio);
    out << ", \"count_per_quadrant\": " << table.count_per_quadrant;
    out << ", \"argument_principle_count\": " << table.count_per_quadrant;
    out << ", \"axis_pole_count\": " << table.axis_pole_count;
    out << "},\n  \"poles\": [\n";
    for (std::size_t i = 0; i < table.poles.size(); ++i) {
        const Pole& p = table.poles[i];
        out << "    {\"n\": " << p.n
            << ", \"k_re\": " << f17(p.k.real())
            << ", \"k_im\": " << f17(p.k.imag())
            << ", \"r_re\": " << f17(p.r.real())
            << ", \"r_im\": " << f17(p.r.imag())
            << ", \"g_residual\": " << f17(p.g_residual) << "}";
        out << (i + 1 < table.poles.size() ? ",\n" : "\n");
    }
    out << "  ]\n}\n";
}

PoleTable load_pole_table(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("pole table parse: ") + e.what());
    }
    if (!j.contains("header") || !j.contains("poles"))
        throw Error("pole table: missing header or poles");
    const auto& h = j["header"];
    BarrierParams params(h.at("V0_eV").get<double>(), h.at("d_nm").get<double>(),
                         h.at("m_ratio").get<double>());
    PoleTable table{params, h.at("count_per_quadrant").get<int>(),
                    h.value("axis_pole_count", 0), {}};
    for (const auto& rec : j["poles"]) {
        table.poles.push_back(Pole{
            rec.at("n").get<int>(),
            Complex{rec.at("k_re").get<double>(), rec.at("k_im").get<double>()},
            Complex{rec.at("r_re").get<double>(), rec.at("r_im").get<double>()},
            rec.at("g_residual").get<double>()});
    }
    if (static_cast<int>(table.poles.size()) != 2 * table.count_per_quadrant)
        throw Error("pole table: record count disagrees with header");
    return table;
}

bool pole_table_header_matches(const std::string& text, const BarrierParams& b,
                               int count_per_quadrant) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("header")) return false;
    const auto& h = j["header"];
    auto same = [](const nlohmann::json& v, double ref) {
        return v.is_number() && v.get<double>() == ref;
    };
    return same(h.value("V0_eV", nlohmann::json()), b.V0) &&
           same(h.value("d_nm", nlohmann::json()), b.d) &&
           same(h.value("m_ratio", nlohmann::json()), b.m_ratio) &&
           h.value("count_per_quadrant", -1) == count_per_quadrant;
}

}  // namespace qshutter
