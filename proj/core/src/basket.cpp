#include "torsion_fano/basket.hpp"
#include "torsion_fano/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace tfano {

SingularityGerm::SingularityGerm(int index, int weight) {
    if (index < 2) throw InvalidGermError("germ index must be >= 2, got " + std::to_string(index));
    const int a = static_cast<int>(mod_floor(weight, index));
    if (std::gcd(a, index) != 1)
        throw InvalidGermError("1/" + std::to_string(index) + "(1," + std::to_string(weight) + ",-" +
                               std::to_string(weight) + ") is not terminal");
    r_ = index;
    a_ = std::min(a, index - a);
}

std::string SingularityGerm::to_string() const {
    return "1/" + std::to_string(r_) + "(1," + std::to_string(a_) + "," + std::to_string(r_ - a_) + ")";
}

std::string LabeledSingularity::to_string() const {
    std::string s = germ.to_string() + "_(";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(labels[i]);
    }
    return s + ")";
}

void validate_entry(const FiniteAbelianGroup& g, const LabeledSingularity& q) {
    if (q.labels.size() != static_cast<std::size_t>(g.rank()))
        throw MalformedClassError("entry " + q.to_string() + " has wrong label count for " + g.to_string());
    const int r = q.germ.index();
    for (std::size_t i = 0; i < q.labels.size(); ++i) {
        const int l = q.labels[i];
        if (l < 0 || l >= r) throw InvalidGermError("label out of range in " + q.to_string());
        if ((static_cast<long long>(g.factor_orders()[i]) * l) % r != 0)
            throw InvalidGermError("label order does not divide generator order in " + q.to_string() + " over " +
                                   g.to_string());
    }
}

Basket::Basket(FiniteAbelianGroup g, std::vector<LabeledSingularity> entries)
    : group_(std::move(g)), entries_(std::move(entries)) {
    for (const auto& q : entries_) validate_entry(group_, q);
    std::sort(entries_.begin(), entries_.end());
}

Rational Basket::mass() const {
    Rational m(0);
    for (const auto& q : entries_) m += Rational(q.germ.index()) - Rational(1, q.germ.index());
    return m;
}

std::string Basket::to_string() const {
    std::string s = group_.to_string() + " {";
    for (std::size_t i = 0; i < entries_.size();) {
        std::size_t j = i;
        while (j < entries_.size() && entries_[j] == entries_[i]) ++j;
        if (i) s += ", ";
        if (j - i > 1) s += std::to_string(j - i) + "x";
        s += entries_[i].to_string();
        i = j;
    }
    return s + "}";
}

int label_at(const FiniteAbelianGroup& g, const LabeledSingularity& q, const GroupClass& c) {
    g.validate(c);
    const int r = q.germ.index();
    long long s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += static_cast<long long>(c[i]) * q.labels[i];
    return static_cast<int>(mod_floor(s, r));
}

Basket restrict_to_class(const Basket& b, const GroupClass& c) {
    const auto& g = b.group();
    g.validate(c);
    if (c.is_zero()) throw InvalidClassError("restriction to the zero class");
    const auto n = g.class_order(c);
    auto cyc = FiniteAbelianGroup::cyclic(n);
    std::vector<LabeledSingularity> out;
    out.reserve(b.size());
    for (const auto& q : b.entries()) out.push_back({q.germ, {label_at(g, q, c)}});
    return Basket(std::move(cyc), std::move(out));
}

Basket torsion_part(const Basket& b, const GroupClass& c) {
    auto full = restrict_to_class(b, c);
    std::vector<LabeledSingularity> keep;
    for (const auto& q : full.entries())
        if (q.labels[0] != 0) keep.push_back(q);
    return Basket(full.group(), std::move(keep));
}

std::vector<LabeledSingularity> residual_part(const Basket& b) {
    std::vector<LabeledSingularity> out;
    for (const auto& q : b.entries())
        if (std::all_of(q.labels.begin(), q.labels.end(), [](int l) { return l == 0; })) out.push_back(q);
    return out;
}

std::vector<LabeledSingularity> difference_set(const Basket& b, const GroupClass& c1, const GroupClass& c2) {
    const auto& g = b.group();
    std::vector<LabeledSingularity> out;
    for (const auto& q : b.entries())
        if (label_at(g, q, c1) != 0 && label_at(g, q, c2) == 0) out.push_back(q);
    return out;
}

Basket apply_automorphism(const Basket& b, const GroupAutomorphism& phi) {
    const auto& g = b.group();
    std::vector<LabeledSingularity> out;
    out.reserve(b.size());
    for (const auto& q : b.entries()) {
        std::vector<int> l(q.labels.size());
        for (std::size_t i = 0; i < l.size(); ++i) l[i] = label_at(g, q, phi.images()[i]);
        out.push_back({q.germ, std::move(l)});
    }
    return Basket(g, std::move(out));
}

const std::vector<GroupAutomorphism>& cached_automorphisms(const FiniteAbelianGroup& g, std::int64_t bound) {
    static std::mutex mu;
    static std::map<std::vector<int>, std::unique_ptr<std::vector<GroupAutomorphism>>> cache;
    if (g.order() > bound)
        throw SizeLimitError("automorphism enumeration limited to |G| <= " + std::to_string(bound));
    std::lock_guard lock(mu);
    auto& slot = cache[g.factor_orders()];
    if (!slot) slot = std::make_unique<std::vector<GroupAutomorphism>>(enumerate_automorphisms(g, bound));
    return *slot;
}

Basket canonicalize(const Basket& b, std::int64_t bound) {
    const auto& g = b.group();
    const auto& auts = cached_automorphisms(g, bound);
    const std::size_t k = static_cast<std::size_t>(g.rank());
    const auto& entries = b.entries();
    std::vector<LabeledSingularity> best = entries, cur(entries.size());
    for (const auto& phi : auts) {
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const auto& q = entries[e];
            cur[e].germ = q.germ;
            cur[e].labels.resize(k);
            for (std::size_t i = 0; i < k; ++i) cur[e].labels[i] = label_at(g, q, phi.images()[i]);
        }
        std::sort(cur.begin(), cur.end());
        if (cur < best) best = cur;
    }
    return Basket(g, std::move(best));
}

Basket cover_basket(const Basket& b, const GroupClass& c) {
    const auto& g = b.group();
    g.validate(c);
    const int d_glob = g.class_order(c);
    const QuotientMap qm = quotient_by(g, c);
    std::vector<LabeledSingularity> out;
    for (const auto& q : b.entries()) {
        const int r = q.germ.index();
        const int lam = label_at(g, q, c);
        const int d = r / std::gcd(lam, r);
        if (d_glob % d != 0)
            throw InconsistentLocalOrderError("local order " + std::to_string(d) + " of " + q.to_string() +
                                              " does not divide " + std::to_string(d_glob));
        const int rp = r / d;
        if (rp == 1) continue;  // the cover is smooth over Q
        std::vector<int> labels;
        for (const auto& lift : qm.lifts) labels.push_back(label_at(g, q, lift) % rp);
        LabeledSingularity pre{SingularityGerm(rp, q.germ.weight() % rp), labels};
        for (int k = 0; k < d_glob / d; ++k) out.push_back(pre);
    }
    return Basket(qm.target, std::move(out));
}

Basket cover_by_group(const Basket& b) {
    Basket cur = b;
    while (!cur.group().is_trivial()) cur = cover_basket(cur, cur.group().generator(cur.group().rank() - 1));
    return cur;
}

Basket replicate(const Basket& d, int copies) {
    std::vector<LabeledSingularity> out;
    for (int k = 0; k < copies; ++k) out.insert(out.end(), d.entries().begin(), d.entries().end());
    return Basket(d.group(), std::move(out));
}

} // namespace tfano
