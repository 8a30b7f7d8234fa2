#include "radavg/report_io.hpp"
#include "radavg/ext_real.hpp"

#include <cstdio>
#include <fstream>

namespace radavg {

nlohmann::json json_num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    return x;
}

nlohmann::json profile_json(const ConditionProfile& p) {
    nlohmann::json j;
    j["verdict"] = to_string(p.verdict);
    j["sup_estimate"] = json_num(p.sup_estimate);
    j["fit_quality"] = p.fit_quality;
    if (p.verdict == Verdict::DivergesLog) j["rate_per_level"] = p.rate;
    if (p.verdict == Verdict::DivergesPower) j["power"] = p.power;
    j["level_power_alpha"] = json_num(p.level_power_alpha);
    j["level_power_r2"] = p.level_power_r2;
    j["nodes"] = p.nodes.size();
    return j;
}

nlohmann::json report_json(const DoublingReport& r) {
    nlohmann::json j;
    j["class"] = to_string(r.class_tested);
    if (r.class_tested == WeightClass::Dcheck) j["K"] = r.K;
    j["verdict"] = to_string(r.verdict);
    j["C_estimate"] = json_num(r.C_estimate);
    j["max_probe_r"] = r.max_probe_r;
    j["ratio_sup"] = json_num(r.ratio_sup);
    j["ratio_inf"] = json_num(r.ratio_inf);
    j["trend_limit"] = json_num(r.trend_limit);
    j["trend_r2"] = r.trend_r2;
    j["protocol"] = r.protocol;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

nlohmann::json estimate_json(const NormEstimate& e) {
    nlohmann::json j;
    j["kind"] = e.kind == NormEstimate::Kind::StrongLower ? "strong_lower"
                                                          : "weak_lower";
    j["value"] = json_num(e.value);
    j["family"] = e.family;
    for (const auto& [k, v] : e.maximizer) j["maximizer"][k] = v;
    return j;
}

void write_profile_csv(const std::string& path, const ConditionProfile& p) {
    std::ofstream out(path);
    const bool with_aux = p.aux.size() == p.nodes.size();
    out << (with_aux ? "level,r,value,running_sup,arg\n"
                     : "level,r,value,running_sup\n");
    char buf[160];
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        if (with_aux)
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n",
                          p.levels[i], p.nodes[i], p.values[i],
                          p.running_sup[i], p.aux[i]);
        else
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n",
                          p.levels[i], p.nodes[i], p.values[i],
                          p.running_sup[i]);
        out << buf;
    }
}

} // namespace radavg
