#include "genea/serialize.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace genea {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_json(const BranchingParams& p, const AncestralProcess& ap) {
    if (auto v = validate(ap))
        throw std::invalid_argument("to_json: invalid ancestral process: " + v->message);
    if (!std::isfinite(ap.e_g) || !std::isfinite(ap.e_d))
        throw std::invalid_argument("to_json: boundaries must be finite");
    std::string out = "{\"beta\":" + format_double(p.beta) +
                      ",\"theta\":" + format_double(p.theta) +
                      ",\"e_g\":" + format_double(ap.e_g) +
                      ",\"e_d\":" + format_double(ap.e_d) + ",\"atoms\":[";
    for (std::size_t i = 0; i < ap.atoms.size(); ++i) {
        if (i) out += ',';
        out += "{\"u\":" + format_double(ap.atoms[i].u) +
               ",\"zeta\":" + format_double(ap.atoms[i].zeta) + '}';
    }
    out += "]}";
    return out;
}

AncestralProcess ancestral_process_from_json(const std::string& text,
                                             BranchingParams* params_out) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("invalid process JSON: ") + e.what());
    }
    AncestralProcess ap;
    try {
        if (params_out) {
            params_out->beta = j.at("beta").get<double>();
            params_out->theta = j.at("theta").get<double>();
        }
        ap.e_g = j.at("e_g").get<double>();
        ap.e_d = j.at("e_d").get<double>();
        for (const auto& a : j.at("atoms"))
            ap.atoms.push_back({a.at("u").get<double>(), a.at("zeta").get<double>()});
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("invalid process JSON: ") + e.what());
    }
    if (auto v = validate(ap))
        throw std::invalid_argument("invalid process JSON: " + v->message);
    return ap;
}

std::string atoms_csv(const AncestralProcess& ap) {
    std::string out = "u,zeta\n";
    for (const Atom& a : ap.atoms)
        out += format_double(a.u) + "," + format_double(a.zeta) + "\n";
    return out;
}

} // namespace genea
