#include "torsion_fano/catalog.hpp"
#include "torsion_fano/errors.hpp"

#include "json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tfano {

using detail::json;
using detail::require;

namespace {

constexpr int kSchema = 1;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw CatalogError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_doc(const std::string& text, const std::string& what) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CatalogError(what + ": " + e.what());
    }
    if (require(j, "schema_version", what).get<int>() != kSchema)
        throw CatalogError(what + ": unsupported schema_version");
    return j;
}

std::vector<GroupClass> classes_from_json(const FiniteAbelianGroup& g, const json& arr, const std::string& where) {
    std::vector<GroupClass> out;
    try {
        for (const auto& c : arr) {
            GroupClass x(c.get<std::vector<int>>());
            g.validate(x);
            out.push_back(std::move(x));
        }
    } catch (const MalformedClassError& e) {
        throw CatalogError(where + ": " + e.what());
    } catch (const json::exception& e) {
        throw CatalogError(where + ": " + e.what());
    }
    return out;
}

json classes_to_json(const std::vector<GroupClass>& cs) {
    json arr = json::array();
    for (const auto& c : cs) arr.push_back(c.exponents());
    return arr;
}

template <class T>
const T& find_named(const std::vector<T>& v, const std::string& name, const char* what) {
    for (const auto& x : v)
        if (x.name == name) return x;
    throw CatalogError(std::string("unknown ") + what + " '" + name + "'");
}

} // namespace

Rational parse_rational(const std::string& s) {
    try {
        const auto slash = s.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return Rational(v);
        }
        const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        const long long p = std::stoll(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        const long long q = std::stoll(b, &used);
        if (used != b.size() || q == 0) throw std::invalid_argument(s);
        return Rational(p, q);
    } catch (const std::logic_error&) {
        throw CatalogError("not a rational number: '" + s + "'");
    }
}

std::string monomial_string(const std::vector<int>& exps) {
    std::string out;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (!exps[i]) continue;
        out += "x" + std::to_string(i);
        if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
    }
    return out.empty() ? "1" : out;
}

std::string default_data_dir() {
    if (const char* env = std::getenv("TORSION_FANO_DATA"); env && *env) return env;
    namespace fs = std::filesystem;
    if (fs::exists(fs::path(TORSION_FANO_DEFAULT_DATA_DIR) / "baskets.json")) return TORSION_FANO_DEFAULT_DATA_DIR;
    return TORSION_FANO_INSTALL_DATA_DIR;
}

Catalog Catalog::load(const std::string& dir) {
    const std::filesystem::path d(dir);
    return from_json(slurp(d / "covers.json"), slurp(d / "baskets.json"), slurp(d / "records.json"),
                     slurp(d / "cyclic_table.json"));
}

Catalog Catalog::from_json(const std::string& covers, const std::string& baskets, const std::string& records,
                           const std::string& table) {
    Catalog cat;

    const json jc = parse_doc(covers, "covers.json");
    for (const auto& c : require(jc, "covers", "covers.json")) {
        CoverModel m;
        m.name = require(c, "name", "cover").get<std::string>();
        const std::string where = "cover " + m.name;
        m.weights = require(c, "weights", where).get<std::vector<int>>();
        m.equation_degrees = require(c, "equation_degrees", where).get<std::vector<int>>();
        m.basket = Basket(FiniteAbelianGroup(), detail::entries_from_json(require(c, "basket", where), where));
        m.validate();
        cat.covers_.push_back(std::move(m));
    }

    const json jb = parse_doc(baskets, "baskets.json");
    for (const auto& b : require(jb, "baskets", "baskets.json")) {
        BasketRecord r;
        r.name = require(b, "name", "basket").get<std::string>();
        r.basket = detail::basket_from_json(b, "basket " + r.name);
        r.source = b.value("source", "");
        r.printed_as = b.value("printed_as", std::vector<std::string>{});
        r.printed_label = b.value("printed_label", "");
        r.note = b.value("note", "");
        cat.baskets_.push_back(std::move(r));
    }

    const json jr = parse_doc(records, "records.json");
    for (const auto& x : require(jr, "records", "records.json")) {
        QuotientRecord r;
        r.name = require(x, "name", "record").get<std::string>();
        const std::string where = "record " + r.name;
        r.heading = x.value("heading", "");
        r.cover = require(x, "cover", where).get<std::string>();
        try {
            r.group = FiniteAbelianGroup::parse(require(x, "group", where).get<std::string>());
        } catch (const MalformedClassError& e) {
            throw CatalogError(where + ": " + e.what());
        }
        r.printed_action = x.value("printed_action", std::vector<std::string>{});
        r.coordinate_characters = classes_from_json(r.group, require(x, "coordinate_characters", where), where);
        r.equation_characters = classes_from_json(r.group, require(x, "equation_characters", where), where);
        r.torsion_basket = require(x, "torsion_basket", where).get<std::string>();
        for (const auto& e : detail::entries_from_json(require(x, "residual", where), where)) {
            if (e.labels != std::vector<int>(static_cast<std::size_t>(r.group.rank()), 0))
                throw CatalogError(where + ": residual points carry zero labels");
            r.residual.push_back(e.germ);
        }
        r.degree = parse_rational(require(x, "degree", where).get<std::string>());
        r.printed_as = x.value("printed_as", "");
        if (x.contains("printed_coordinate_characters"))
            r.printed_coordinate_characters = classes_from_json(r.group, x["printed_coordinate_characters"], where);
        for (const auto& s : x.value("equation_shapes", json::array())) {
            EquationShape es;
            auto cs = classes_from_json(r.group, json::array({require(s, "character", where)}), where);
            es.character = cs.front();
            es.monomials = require(s, "monomials", where).get<std::vector<std::string>>();
            es.printed_as = s.value("printed_as", "");
            es.note = s.value("note", "");
            r.equation_shapes.push_back(std::move(es));
        }
        cat.records_.push_back(std::move(r));
    }

    cat.table_ = CyclicBasketTable::from_json(table);
    cat.check_integrity();
    return cat;
}

void Catalog::check_integrity() const {
    auto dup = [](const auto& v, const char* what) {
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i].name == v[j].name) throw CatalogError(std::string("duplicate ") + what + " '" + v[i].name + "'");
    };
    dup(covers_, "cover");
    dup(baskets_, "basket");
    dup(records_, "record");
    for (const auto& r : records_) {
        const auto& y = cover(r.cover);
        const auto& b = basket(r.torsion_basket);
        if (b.basket.group() != r.group)
            throw CatalogError("record " + r.name + ": basket " + b.name + " is over " + b.basket.group().to_string());
        if (r.coordinate_characters.size() != y.weights.size() ||
            r.equation_characters.size() != y.equation_degrees.size())
            throw CatalogError("record " + r.name + ": action does not match cover " + y.name);
    }
}

std::string Catalog::covers_json() const {
    json arr = json::array();
    for (const auto& c : covers_)
        arr.push_back({{"name", c.name},
                       {"weights", c.weights},
                       {"equation_degrees", c.equation_degrees},
                       {"basket", detail::entries_to_json(c.basket)}});
    return json({{"schema_version", kSchema}, {"covers", arr}}).dump(1);
}

std::string Catalog::baskets_json() const {
    json arr = json::array();
    for (const auto& b : baskets_) {
        json j = {{"name", b.name},
                  {"group", b.basket.group().to_string()},
                  {"source", b.source},
                  {"entries", detail::entries_to_json(b.basket)}};
        if (!b.printed_as.empty()) j["printed_as"] = b.printed_as;
        if (!b.printed_label.empty()) j["printed_label"] = b.printed_label;
        if (!b.note.empty()) j["note"] = b.note;
        arr.push_back(j);
    }
    return json({{"schema_version", kSchema}, {"baskets", arr}}).dump(1);
}

std::string Catalog::records_json() const {
    json arr = json::array();
    for (const auto& r : records_) {
        json res = json::array();
        for (const auto& q : r.residual)
            res.push_back({{"r", q.index()}, {"a", q.weight()}, {"labels", std::vector<int>(r.group.rank(), 0)}});
        json j = {{"name", r.name},
                  {"heading", r.heading},
                  {"cover", r.cover},
                  {"group", r.group.to_string()},
                  {"printed_action", r.printed_action},
                  {"coordinate_characters", classes_to_json(r.coordinate_characters)},
                  {"equation_characters", classes_to_json(r.equation_characters)},
                  {"torsion_basket", r.torsion_basket},
                  {"residual", res},
                  {"degree", to_string(r.degree)}};
        if (!r.printed_as.empty()) j["printed_as"] = r.printed_as;
        if (!r.printed_coordinate_characters.empty())
            j["printed_coordinate_characters"] = classes_to_json(r.printed_coordinate_characters);
        if (!r.equation_shapes.empty()) {
            json shapes = json::array();
            for (const auto& s : r.equation_shapes) {
                json e = {{"character", s.character.exponents()}, {"monomials", s.monomials}};
                if (!s.printed_as.empty()) e["printed_as"] = s.printed_as;
                if (!s.note.empty()) e["note"] = s.note;
                shapes.push_back(e);
            }
            j["equation_shapes"] = shapes;
        }
        arr.push_back(j);
    }
    return json({{"schema_version", kSchema}, {"records", arr}}).dump(1);
}

const CoverModel& Catalog::cover(const std::string& name) const { return find_named(covers_, name, "cover"); }
const BasketRecord& Catalog::basket(const std::string& name) const { return find_named(baskets_, name, "basket"); }

bool Catalog::has_cover(const std::string& name) const {
    for (const auto& c : covers_)
        if (c.name == name) return true;
    return false;
}

bool Catalog::has_record(const std::string& key) const {
    try {
        record(key);
        return true;
    } catch (const CatalogError&) {
        return false;
    }
}

const QuotientRecord& Catalog::record(const std::string& key) const {
    const QuotientRecord* hit = nullptr;
    for (const auto& r : records_) {
        if (r.name == key) return r;
        if (r.name.rfind(key + "-", 0) == 0) {
            if (hit) throw CatalogError("record key '" + key + "' is ambiguous");
            hit = &r;
        }
    }
    if (!hit) throw CatalogError("unknown record '" + key + "'");
    return *hit;
}

std::vector<const BasketRecord*> Catalog::baskets_for(const FiniteAbelianGroup& g) const {
    std::vector<const BasketRecord*> out;
    for (const auto& b : baskets_)
        if (b.basket.group() == g) out.push_back(&b);
    return out;
}

Basket Catalog::claimed_basket(const QuotientRecord& r) const {
    auto entries = basket(r.torsion_basket).basket.entries();
    for (const auto& q : r.residual) entries.push_back({q, std::vector<int>(static_cast<std::size_t>(r.group.rank()), 0)});
    return Basket(r.group, std::move(entries));
}

} // namespace tfano
