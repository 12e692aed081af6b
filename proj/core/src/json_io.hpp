#pragma once
// internal JSON helpers shared by the table and catalog loaders

#include "torsion_fano/basket.hpp"
#include "torsion_fano/errors.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tfano::detail {

using json = nlohmann::json;

inline const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw CatalogError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline std::vector<LabeledSingularity> entries_from_json(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw CatalogError(where + ": entries must be an array");
    std::vector<LabeledSingularity> out;
    for (const auto& e : arr) {
        const int r = require(e, "r", where).get<int>();
        const int a = require(e, "a", where).get<int>();
        const auto labels = require(e, "labels", where).get<std::vector<int>>();
        const int count = e.value("count", 1);
        if (count < 1) throw CatalogError(where + ": count must be positive");
        SingularityGerm germ;
        try {
            germ = SingularityGerm(r, a);
        } catch (const InvalidGermError& err) {
            throw CatalogError(where + ": " + err.what());
        }
        for (int k = 0; k < count; ++k) out.push_back({germ, labels});
    }
    return out;
}

inline Basket basket_from_json(const json& j, const std::string& where) {
    FiniteAbelianGroup g;
    try {
        g = FiniteAbelianGroup::parse(require(j, "group", where).get<std::string>());
    } catch (const MalformedClassError& err) {
        throw CatalogError(where + ": " + err.what());
    }
    auto entries = entries_from_json(require(j, "entries", where), where);
    try {
        return Basket(g, std::move(entries));
    } catch (const Error& err) {
        throw CatalogError(where + ": " + err.what());
    }
}

// entries grouped with "count" so files stay readable
inline json entries_to_json(const Basket& b) {
    json arr = json::array();
    const auto& es = b.entries();
    for (std::size_t i = 0; i < es.size();) {
        std::size_t j = i;
        while (j < es.size() && es[j] == es[i]) ++j;
        json e = {{"r", es[i].germ.index()}, {"a", es[i].germ.weight()}, {"labels", es[i].labels}};
        if (j - i > 1) e["count"] = j - i;
        arr.push_back(e);
        i = j;
    }
    return arr;
}

} // namespace tfano::detail
