#pragma once

// Text and JSON rendering of cohomology reports (JSON schema 1).

#include <intform/cohomology.hpp>
#include <intform/parse.hpp>

#include <json.hpp>

#include <string>

namespace intform {

inline std::string dim_key(const CohomologyReport& r, int key) {
    if (r.kind == "cech") return "h" + std::to_string(key);
    return std::to_string(key) + "|" + std::to_string(r.picture);
}

inline nlohmann::ordered_json to_json(const CohomologyReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = r.kind;
    j["space"] = r.space;
    if (r.kind == "cech") {
        j["sheaf"] = r.sheaf;
        j["cutoff"] = r.cutoff;
        j["h0"] = r.dim(0);
        j["h1"] = r.dim(1);
    } else {
        j["picture"] = r.picture;
        j["cutoff"] = r.cutoff;
        nlohmann::ordered_json dims = nlohmann::ordered_json::object();
        for (const auto& [k, d] : r.dims) dims[dim_key(r, k)] = d;
        j["dims"] = dims;
    }
    nlohmann::ordered_json gens = nlohmann::ordered_json::object();
    for (const auto& [k, d] : r.dims) {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        auto it = r.generators.find(k);
        if (it != r.generators.end())
            for (const auto& g : it->second) list.push_back(pretty_print(g));
        gens[dim_key(r, k)] = list;
    }
    j["generators"] = gens;
    j["stabilized"] = r.stabilized;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline std::string to_text(const CohomologyReport& r) {
    std::string out = r.kind + " " + r.space;
    if (r.kind == "cech")
        out += " sheaf " + r.sheaf;
    else
        out += " picture " + std::to_string(r.picture);
    out += " cutoff " + std::to_string(r.cutoff) + (r.stabilized ? " (stable)" : " (NOT stable)") + "\n";
    for (const auto& [k, d] : r.dims) {
        out += "  " + dim_key(r, k) + " = " + std::to_string(d) + "\n";
        auto it = r.generators.find(k);
        if (it == r.generators.end()) continue;
        for (const auto& g : it->second) out += "    " + pretty_print(g) + "\n";
    }
    for (const auto& n : r.notes) out += "  note: " + n + "\n";
    return out;
}

}  // namespace intform
