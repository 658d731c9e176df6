#include "matcon/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace matcon {

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

nlohmann::ordered_json json_number(double x) {
    if (!std::isfinite(x)) return format_number(x);
    // Round-trip through the 12-digit text so CSV and JSON carry the same value.
    return std::strtod(format_number(x).c_str(), nullptr);
}

std::string report_csv_header() {
    return "model,d1,d2,n,v,v_provenance,L,L_provenance,C,lower,upper,mc_sqnorm_mean,mc_se,samples,seed,sandwich_ok";
}

std::string report_csv_row(const BoundReport& r) {
    std::string row = r.model;
    auto add = [&row](const std::string& s) {
        row += ',';
        row += s;
    };
    add(std::to_string(r.d1));
    add(std::to_string(r.d2));
    add(std::to_string(r.n));
    add(format_number(r.v));
    add(provenance_name(r.v_provenance));
    add(format_number(r.L));
    add(provenance_name(r.L_provenance));
    add(format_number(r.C));
    add(format_number(r.lower));
    add(format_number(r.upper));
    add(format_number(r.mc_sqnorm.mean));
    add(format_number(r.mc_sqnorm.spread));
    add(std::to_string(r.mc_sqnorm.samples));
    add(std::to_string(r.mc_sqnorm.seed.value));
    add(r.sandwich_ok ? "true" : "false");
    return row;
}

nlohmann::ordered_json report_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["model"] = r.model;
    j["d1"] = r.d1;
    j["d2"] = r.d2;
    j["n"] = r.n;
    j["v"] = json_number(r.v);
    j["v_provenance"] = provenance_name(r.v_provenance);
    j["L"] = json_number(r.L);
    j["L_provenance"] = provenance_name(r.L_provenance);
    j["C"] = json_number(r.C);
    j["lower"] = json_number(r.lower);
    j["upper"] = json_number(r.upper);
    j["mc_sqnorm_mean"] = json_number(r.mc_sqnorm.mean);
    j["mc_se"] = json_number(r.mc_sqnorm.spread);
    j["samples"] = r.mc_sqnorm.samples;
    j["seed"] = r.mc_sqnorm.seed.value;
    j["sandwich_ok"] = r.sandwich_ok;
    return j;
}

}  // namespace matcon
