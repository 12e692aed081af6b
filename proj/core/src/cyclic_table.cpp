#include "torsion_fano/cyclic_table.hpp"
#include "torsion_fano/errors.hpp"
#include "torsion_fano/orbifold_rr.hpp"

#include "json_io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace tfano {

using detail::json;

const char* to_string(Membership m) {
    switch (m) {
    case Membership::Member: return "member";
    case Membership::NotMember: return "not-member";
    case Membership::Unknown: return "unknown";
    }
    return "?";
}

bool EntryShape::admits(const Basket& x) const {
    for (const auto& [r, count] : min_index_count) {
        const auto have = std::count_if(x.entries().begin(), x.entries().end(),
                                        [r = r](const LabeledSingularity& q) { return q.germ.index() == r; });
        if (have < count) return false;
    }
    return true;
}

Basket cyclic_basket(int n, std::vector<LabeledSingularity> entries) {
    return canonicalize(Basket(FiniteAbelianGroup::cyclic(n), std::move(entries)));
}

// ---- table ---------------------------------------------------------------

CyclicBasketTable::CyclicBasketTable(const CyclicBasketTable& o)
    : boxes_(o.boxes_), supported_(o.supported_), known_(o.known_) {
    std::lock_guard lock(o.env_mu_);
    envelope_ = o.envelope_;
}

CyclicBasketTable& CyclicBasketTable::operator=(const CyclicBasketTable& o) {
    if (this == &o) return *this;
    boxes_ = o.boxes_;
    supported_ = o.supported_;
    known_ = o.known_;
    std::scoped_lock lock(env_mu_, o.env_mu_);
    envelope_ = o.envelope_;
    return *this;
}

void CyclicBasketTable::add_box(TableBox box) {
    for (auto& e : box.entries)
        if (e.basket) {
            if (e.basket->group() != FiniteAbelianGroup::cyclic(box.order))
                throw CatalogError("entry " + e.name + " is not over Z" + std::to_string(box.order));
            e.basket = canonicalize(*e.basket);
        }
    const int n = box.order;
    boxes_[n] = std::move(box);
    rebuild_index();
    std::lock_guard lock(env_mu_);
    envelope_.clear();
}

void CyclicBasketTable::rebuild_index() {
    known_.clear();
    for (const auto& [n, box] : boxes_) {
        auto& v = known_[n];
        for (const auto& e : box.entries)
            if (e.basket && std::find(v.begin(), v.end(), *e.basket) == v.end()) v.push_back(*e.basket);
        std::sort(v.begin(), v.end());
    }
}

const TableBox& CyclicBasketTable::box(int n) const {
    auto it = boxes_.find(n);
    if (it == boxes_.end()) throw TableIncompleteError("cyclic table has no box " + std::to_string(n));
    return it->second;
}

std::vector<int> CyclicBasketTable::box_orders() const {
    std::vector<int> out;
    for (const auto& [n, b] : boxes_) out.push_back(n);
    return out;
}

const std::vector<Basket>& CyclicBasketTable::known(int n) const {
    static const std::vector<Basket> none;
    auto it = known_.find(n);
    return it == known_.end() ? none : it->second;
}

bool CyclicBasketTable::is_known(const Basket& x) const {
    const auto& v = known(x.group().exponent());
    return std::binary_search(v.begin(), v.end(), x);
}

std::optional<std::string> CyclicBasketTable::name_of(const Basket& x) const {
    auto it = boxes_.find(x.group().exponent());
    if (it == boxes_.end()) return std::nullopt;
    for (const auto& e : it->second.entries)
        if (e.basket && *e.basket == x) return e.identified_as.empty() ? e.name : e.identified_as;
    return std::nullopt;
}

std::vector<const TableEntry*> CyclicBasketTable::free_slots(int n) const {
    std::vector<const TableEntry*> out;
    auto it = boxes_.find(n);
    if (it == boxes_.end()) return out;
    for (const auto& e : it->second.entries) {
        if (e.source != EntrySource::CitedOnly) continue;
        const bool filled = std::any_of(it->second.entries.begin(), it->second.entries.end(),
                                        [&](const TableEntry& o) { return o.identified_as == e.name; });
        if (!filled) out.push_back(&e);
    }
    return out;
}

void CyclicBasketTable::reconcile() {
    for (auto& [n, box] : boxes_) {
        for (auto& e : box.entries) {
            if (e.source != EntrySource::Reconstructed || !e.basket || !e.identified_as.empty()) continue;
            if (!e.name.empty() && e.name[0] == 'B') continue;   // already carries a printed name
            std::vector<std::string> admitting;
            for (const auto& slot : box.entries)
                if (slot.source == EntrySource::CitedOnly && (!slot.shape || slot.shape->admits(*e.basket)))
                    admitting.push_back(slot.name);
            if (admitting.size() == 1) {
                const bool taken = std::any_of(box.entries.begin(), box.entries.end(),
                                               [&](const TableEntry& o) { return o.identified_as == admitting[0]; });
                if (!taken) e.identified_as = admitting[0];
            }
        }
    }
}

// ---- JSON ----------------------------------------------------------------

CyclicBasketTable CyclicBasketTable::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CatalogError(std::string("cyclic table: ") + e.what());
    }
    const std::string where = "cyclic table";
    const int version = detail::require(j, "schema_version", where).get<int>();
    if (version != 1) throw CatalogError(where + ": unsupported schema_version " + std::to_string(version));
    CyclicBasketTable t;
    if (j.contains("supported_indices")) t.supported_ = j.at("supported_indices").get<std::vector<int>>();
    std::set<int> closed;
    if (j.contains("closed_boxes"))
        for (int n : j.at("closed_boxes")) closed.insert(n);
    for (const auto& [key, arr] : detail::require(j, "boxes", where).items()) {
        TableBox box;
        try {
            box.order = std::stoi(key);
        } catch (const std::exception&) {
            throw CatalogError(where + ": bad box key '" + key + "'");
        }
        box.closed = closed.count(box.order) != 0;
        for (const auto& ej : arr) {
            TableEntry e;
            e.name = ej.value("name", "");
            const std::string src = ej.value("source", "reconstructed");
            if (src == "reconstructed") e.source = EntrySource::Reconstructed;
            else if (src == "cited-only") e.source = EntrySource::CitedOnly;
            else throw CatalogError(where + ": unknown source '" + src + "'");
            const std::string ewhere = where + " box " + key + " entry " + e.name;
            if (e.source == EntrySource::Reconstructed) e.basket = detail::basket_from_json(ej, ewhere);
            if (ej.contains("shape")) {
                EntryShape s;
                for (const auto& [r, cnt] : ej.at("shape").at("min_index_count").items()) s.min_index_count[std::stoi(r)] = cnt.get<int>();
                e.shape = s;
            }
            if (ej.contains("derived_from")) e.derived_from = ej.at("derived_from").get<std::vector<std::string>>();
            e.printed_as = ej.value("printed_as", "");
            e.note = ej.value("note", "");
            box.entries.push_back(std::move(e));
        }
        t.add_box(std::move(box));
    }
    for (int n : closed)
        if (!t.has_box(n)) throw CatalogError(where + ": closed box " + std::to_string(n) + " has no entries");
    t.reconcile();
    return t;
}

CyclicBasketTable CyclicBasketTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open cyclic table " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string CyclicBasketTable::to_json() const {
    json j;
    j["schema_version"] = 1;
    j["supported_indices"] = supported_;
    json closed = json::array();
    json boxes = json::object();
    for (const auto& [n, box] : boxes_) {
        if (box.closed) closed.push_back(n);
        json arr = json::array();
        for (const auto& e : box.entries) {
            json ej;
            ej["name"] = e.name;
            ej["source"] = e.source == EntrySource::Reconstructed ? "reconstructed" : "cited-only";
            ej["group"] = FiniteAbelianGroup::cyclic(n).to_string();
            ej["entries"] = e.basket ? detail::entries_to_json(*e.basket) : json::array();
            if (e.shape) {
                json m = json::object();
                for (const auto& [r, c] : e.shape->min_index_count) m[std::to_string(r)] = c;
                ej["shape"] = {{"min_index_count", m}};
            }
            if (!e.derived_from.empty()) ej["derived_from"] = e.derived_from;
            if (!e.printed_as.empty()) ej["printed_as"] = e.printed_as;
            if (!e.note.empty()) ej["note"] = e.note;
            arr.push_back(ej);
        }
        boxes[std::to_string(n)] = arr;
    }
    j["closed_boxes"] = closed;
    j["boxes"] = boxes;
    return j.dump(1);
}

// ---- necessary conditions / membership -----------------------------------

namespace {

Basket torsion_only(const Basket& x) {
    std::vector<LabeledSingularity> keep;
    for (const auto& q : x.entries())
        if (q.labels.at(0) != 0) keep.push_back(q);
    return Basket(x.group(), std::move(keep));
}

// contribution of one point to the c2 identity of the n-fold cover
Rational cover_c2_term(int n, const LabeledSingularity& q) {
    const int r = q.germ.index();
    const int d = r / std::gcd(q.labels[0], r);
    return Rational(n) * (Rational(r) - Rational(1, r)) - Rational(n, d) * (Rational(r, d) - Rational(d, r));
}

} // namespace

std::optional<std::string> necessary_violation(const CyclicBasketTable& t, const Basket& x0) {
    const Basket x = torsion_only(x0);
    const int n = static_cast<int>(x.group().order());
    if (x.group().rank() != 1) return "not a cyclic basket";
    if (x.empty()) return "empty torsion basket";
    const auto& sup = t.supported_indices();
    for (const auto& q : x.entries())
        if (std::find(sup.begin(), sup.end(), q.germ.index()) == sup.end())
            return "unsupported index " + std::to_string(q.germ.index());
    if (std::none_of(x.entries().begin(), x.entries().end(), [&](const LabeledSingularity& q) {
            return q.germ.index() / std::gcd(q.labels[0], q.germ.index()) == n;
        }))
        return "no point of exact local order " + std::to_string(n);
    for (int k = 1; k < n; ++k) {
        const Rational chi = torsion_chi_at_zero(x, GroupClass({k}));
        if (chi != Rational(0)) return "chi(" + std::to_string(k) + "tau) = " + to_string(chi) + " != 0";
    }
    Rational c2(0);
    for (const auto& q : x.entries()) c2 += cover_c2_term(n, q);
    if (c2 != Rational(24 * (n - 1))) return "cover c2 identity gives " + to_string(c2) + " != " + std::to_string(24 * (n - 1));
    for (int k = 2; k < n; ++k) {
        if (n % k) continue;
        const Basket y = torsion_only(restrict_to_class(x, GroupClass({k})));
        if (membership(t, y).verdict == Membership::NotMember)
            return "restriction to " + std::to_string(k) + "tau is not in box " + std::to_string(n / k);
    }
    return std::nullopt;
}

MembershipResult membership(const CyclicBasketTable& t, const Basket& x0, SlotState* slots) {
    if (x0.group().rank() != 1) throw GroupMismatchError("membership needs a cyclic basket");
    const int n = static_cast<int>(x0.group().order());
    if (!t.has_box(n)) return {Membership::NotMember, "no box " + std::to_string(n)};
    const Basket x = canonicalize(torsion_only(x0));
    if (t.is_known(x)) return {Membership::Member, t.name_of(x).value_or("")};
    if (auto why = necessary_violation(t, x)) return {Membership::NotMember, *why};
    if (slots)
        for (const auto& [name, b] : slots->bound)
            if (b == x) return {Membership::Unknown, "slot " + name};
    if (t.box(n).closed) {
        for (const TableEntry* slot : t.free_slots(n)) {
            if (slot->shape && !slot->shape->admits(x)) continue;
            if (slots) {
                if (slots->bound.count(slot->name)) continue;
                slots->bound.emplace(slot->name, x);
            }
            return {Membership::Unknown, "slot " + slot->name};
        }
        return {Membership::NotMember, "closed box " + std::to_string(n)};
    }
    return {Membership::Unknown, "open box " + std::to_string(n)};
}

bool replicate_check(const std::vector<LabeledSingularity>& s, int copies, const CyclicBasketTable& t, int box) {
    if (!t.has_box(box)) throw TableIncompleteError("cyclic table has no box " + std::to_string(box));
    if (s.empty() || copies < 1) return false;
    std::vector<LabeledSingularity> all;
    for (int k = 0; k < copies; ++k) all.insert(all.end(), s.begin(), s.end());
    const auto m = membership(t, Basket(FiniteAbelianGroup::cyclic(box), std::move(all)));
    if (m.verdict == Membership::Unknown)
        throw TableIncompleteError("box " + std::to_string(box) + " cannot decide replicate (" + m.reason + ")");
    return m.verdict == Membership::Member;
}

// ---- envelope --------------------------------------------------------------

const std::vector<Basket>& CyclicBasketTable::envelope(int n) const {
    {
        std::lock_guard lock(env_mu_);
        if (auto it = envelope_.find(n); it != envelope_.end()) return *it->second;
    }
    struct Type { LabeledSingularity q; Rational w; };
    std::vector<Type> types;
    for (int r : supported_)
        for (int a = 1; 2 * a <= r; ++a) {
            if (std::gcd(a, r) != 1) continue;
            for (int l = 1; l < r; ++l) {
                if ((static_cast<long long>(n) * l) % r) continue;
                LabeledSingularity q{SingularityGerm(r, a), {l}};
                types.push_back({q, cover_c2_term(n, q)});
            }
        }
    const Rational target(24 * (n - 1));
    std::set<Basket> found;
    std::vector<LabeledSingularity> acc;
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational tot) {
        if (tot == target) {
            Basket x = cyclic_basket(n, acc);
            if (!necessary_violation(*this, x)) found.insert(std::move(x));
            return;
        }
        if (i == types.size() || tot > target) return;
        const std::size_t mark = acc.size();
        for (Rational s = tot; s <= target; s += types[i].w) {
            rec(i + 1, s);
            acc.push_back(types[i].q);
        }
        acc.resize(mark);
    };
    rec(0, Rational(0));
    auto v = std::make_shared<const std::vector<Basket>>(found.begin(), found.end());
    std::lock_guard lock(env_mu_);
    return *envelope_.emplace(n, std::move(v)).first->second;
}

} // namespace tfano
