#include "torsion_fano/basket_engine.hpp"
#include "torsion_fano/errors.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace tfano {

namespace {

using State = std::map<LabeledSingularity, int>;   // labels on the generators placed so far

bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

// Enumerates ways to give the points of one germ their label for the next
// generator. existing: (labels so far, count); xs: (new label, count) from
// the candidate Bt. The callback gets m[key][label index] and the leftover
// counts, which become new points.
void distribute(const std::vector<std::pair<std::vector<int>, int>>& ex, const std::vector<std::pair<int, int>>& xs,
                const std::function<void(const std::vector<std::vector<int>>&, const std::vector<int>&)>& f) {
    std::vector<int> caps(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) caps[i] = xs[i].second;
    std::vector<std::vector<int>> m(ex.size(), std::vector<int>(xs.size(), 0));
    std::function<void(std::size_t, std::size_t, int)> rec = [&](std::size_t ki, std::size_t li, int remaining) {
        if (ki == ex.size()) {
            f(m, caps);
            return;
        }
        if (li == xs.size()) {
            rec(ki + 1, 0, ki + 1 < ex.size() ? ex[ki + 1].second : 0);
            return;
        }
        const int top = std::min(remaining, caps[li]);
        for (int k = 0; k <= top; ++k) {
            m[ki][li] = k;
            caps[li] -= k;
            rec(ki, li + 1, remaining - k);
            caps[li] += k;
        }
        m[ki][li] = 0;
    };
    rec(0, 0, ex.empty() ? 0 : ex[0].second);
}

class Search {
public:
    Search(const FiniteAbelianGroup& g, const CyclicBasketTable& t, const EnumerationOptions& opts)
        : g_(g), t_(t), opts_(opts), orders_(g.factor_orders()) {
        const int k = g.rank();
        for (int j = 0; j < k; ++j) {
            prefix_.push_back(FiniteAbelianGroup::from_factors({orders_.begin(), orders_.begin() + j + 1}));
            std::vector<GroupClass> cls;
            for (const auto& c : prefix_.back().elements())
                if (c[static_cast<std::size_t>(j)] != 0) cls.push_back(c);
            fresh_classes_.push_back(std::move(cls));
        }
    }

    std::vector<std::pair<Basket, bool>> candidates(int j) const {
        const int n = orders_[static_cast<std::size_t>(j)];
        std::vector<std::pair<Basket, bool>> out;
        if (!t_.has_box(n)) return out;
        for (const auto& x : t_.known(n)) out.emplace_back(x, true);
        if (opts_.use_envelopes)
            for (const auto& x : t_.envelope(n))
                if (!t_.is_known(x)) out.emplace_back(x, false);
        return out;
    }

    void run_top(const Basket& x, bool listed) { try_candidate(0, State{}, true, SlotState{}, "", x, listed); }

    std::set<Basket> certain;
    std::map<Basket, std::string> uncertain;
    EnumerationStats stats;

private:
    MembershipResult member(const Basket& y, SlotState& slots) {
        const Basket key = canonicalize(y);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, membership(t_, key)).first;
        if (it->second.verdict != Membership::Unknown) return it->second;
        return membership(t_, key, &slots);
    }

    void step(int j, const State& state, bool cert, const SlotState& slots, const std::string& why) {
        if (j == g_.rank()) {
            leaf(state, cert, slots, why);
            return;
        }
        for (const auto& [x, listed] : candidates(j)) try_candidate(j, state, cert, slots, why, x, listed);
    }

    void try_candidate(int j, const State& state, bool cert, const SlotState& slots, const std::string& why,
                       const Basket& x, bool listed) {
        SlotState sl0 = slots;
        const auto m0 = member(x, sl0);
        if (m0.verdict == Membership::NotMember) return;
        const bool cert0 = cert && listed && m0.verdict == Membership::Member;
        const std::string why0 = why.empty() && !cert0 ? "Bt(e" + std::to_string(j + 1) + "): " + m0.reason : why;

        std::map<SingularityGerm, std::map<int, int>> by_germ;
        for (const auto& q : x.entries()) ++by_germ[q.germ][q.labels[0]];
        std::map<SingularityGerm, std::vector<std::pair<std::vector<int>, int>>> existing;
        for (const auto& [q, cnt] : state) existing[q.germ].emplace_back(q.labels, cnt);
        std::vector<SingularityGerm> germs;
        for (const auto& [gm, v] : by_germ) germs.push_back(gm);
        for (const auto& [gm, v] : existing)
            if (!by_germ.count(gm)) germs.push_back(gm);

        std::vector<std::pair<LabeledSingularity, int>> acc;
        std::function<void(std::size_t)> over_germs = [&](std::size_t gi) {
            if (gi == germs.size()) {
                State next;
                for (const auto& [q, c] : acc) next[q] += c;
                check_and_descend(j, next, cert0, sl0, why0);
                return;
            }
            const auto& gm = germs[gi];
            std::vector<std::pair<int, int>> xs;
            if (auto it = by_germ.find(gm); it != by_germ.end()) xs.assign(it->second.begin(), it->second.end());
            static const std::vector<std::pair<std::vector<int>, int>> none;
            const auto& ex = existing.count(gm) ? existing.at(gm) : none;
            distribute(ex, xs, [&](const std::vector<std::vector<int>>& m, const std::vector<int>& left) {
                const std::size_t mark = acc.size();
                for (std::size_t ki = 0; ki < ex.size(); ++ki) {
                    int used = 0;
                    for (std::size_t li = 0; li < xs.size(); ++li) {
                        if (!m[ki][li]) continue;
                        auto labels = ex[ki].first;
                        labels.push_back(xs[li].first);
                        acc.push_back({{gm, std::move(labels)}, m[ki][li]});
                        used += m[ki][li];
                    }
                    if (ex[ki].second > used) {
                        auto labels = ex[ki].first;
                        labels.push_back(0);
                        acc.push_back({{gm, std::move(labels)}, ex[ki].second - used});
                    }
                }
                for (std::size_t li = 0; li < xs.size(); ++li) {
                    if (!left[li]) continue;
                    std::vector<int> labels(static_cast<std::size_t>(j), 0);
                    labels.push_back(xs[li].first);
                    acc.push_back({{gm, std::move(labels)}, left[li]});
                }
                over_germs(gi + 1);
                acc.resize(mark);
            });
        };
        over_germs(0);
    }

    void check_and_descend(int j, const State& next, bool cert, SlotState slots, std::string why) {
        ++stats.candidates;
        const auto& pg = prefix_[static_cast<std::size_t>(j)];
        for (const auto& c : fresh_classes_[static_cast<std::size_t>(j)]) {
            std::vector<LabeledSingularity> y;
            for (const auto& [q, cnt] : next) {
                const int lab = label_at(pg, q, c);
                if (lab)
                    for (int k = 0; k < cnt; ++k) y.push_back({q.germ, {lab}});
            }
            if (y.empty()) {
                ++stats.pruned;
                return;
            }
            const auto m = member(Basket(FiniteAbelianGroup::cyclic(pg.class_order(c)), std::move(y)), slots);
            if (m.verdict == Membership::NotMember) {
                ++stats.pruned;
                return;
            }
            if (m.verdict == Membership::Unknown) {
                if (why.empty()) why = "Bt" + c.to_string() + ": " + m.reason;
                cert = false;
            }
        }
        step(j + 1, next, cert, slots, why);
    }

    void leaf(const State& state, bool cert, SlotState slots, std::string why) {
        const int k = g_.rank();
        for (int i = 0; i < k; ++i) {
            const int p = orders_[static_cast<std::size_t>(i)];
            if (!is_prime(p)) continue;
            std::vector<LabeledSingularity> d;
            for (const auto& [q, cnt] : state) {
                bool only_i = q.labels[static_cast<std::size_t>(i)] != 0;
                for (int j2 = 0; j2 < k && only_i; ++j2)
                    if (j2 != i && q.labels[static_cast<std::size_t>(j2)] != 0) only_i = false;
                if (only_i)
                    for (int c = 0; c < cnt; ++c) d.push_back({q.germ, {q.labels[static_cast<std::size_t>(i)]}});
            }
            if (d.empty()) {
                ++stats.replicate_rejected;
                return;
            }
            const auto copies = static_cast<int>(g_.order() / p);
            std::vector<LabeledSingularity> all;
            for (int c = 0; c < copies; ++c) all.insert(all.end(), d.begin(), d.end());
            const auto m = member(Basket(FiniteAbelianGroup::cyclic(p), std::move(all)), slots);
            if (m.verdict == Membership::NotMember) {
                ++stats.replicate_rejected;
                return;
            }
            if (m.verdict == Membership::Unknown) {
                if (why.empty()) why = "replicate e" + std::to_string(i + 1) + ": " + m.reason;
                cert = false;
            }
        }
        ++stats.leaves;
        std::vector<LabeledSingularity> entries;
        for (const auto& [q, cnt] : state)
            for (int c = 0; c < cnt; ++c) entries.push_back(q);
        Basket b = canonicalize(Basket(g_, std::move(entries)));
        if (cert) certain.insert(std::move(b));
        else uncertain.emplace(std::move(b), why);
    }

    const FiniteAbelianGroup& g_;
    const CyclicBasketTable& t_;
    EnumerationOptions opts_;
    std::vector<int> orders_;
    std::vector<FiniteAbelianGroup> prefix_;
    std::vector<std::vector<GroupClass>> fresh_classes_;
    std::map<Basket, MembershipResult> cache_;
};

} // namespace

EnumerationResult enumerate_baskets(const FiniteAbelianGroup& g, const CyclicBasketTable& table,
                                    const EnumerationOptions& opts) {
    EnumerationResult res;
    res.group = g;
    if (g.is_trivial()) return res;
    cached_automorphisms(g);   // fail early on SizeLimitError, and warm the cache

    Search probe(g, table, opts);
    const auto top = probe.candidates(0);
    const unsigned nthreads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(top.size())));
    std::vector<Search> workers;
    for (unsigned i = 0; i < nthreads; ++i) workers.emplace_back(g, table, opts);
    std::atomic<std::size_t> next{0};
    auto work = [&](Search& s) {
        for (std::size_t i = next++; i < top.size(); i = next++) s.run_top(top[i].first, top[i].second);
    };
    if (nthreads == 1) {
        work(workers[0]);
    } else {
        std::vector<std::thread> pool;
        for (auto& w : workers) pool.emplace_back(work, std::ref(w));
        for (auto& th : pool) th.join();
    }

    std::set<Basket> certain;
    std::map<Basket, std::string> uncertain;
    for (auto& w : workers) {
        certain.insert(w.certain.begin(), w.certain.end());
        for (auto& [b, why] : w.uncertain) {
            auto it = uncertain.find(b);
            if (it == uncertain.end() || why < it->second) uncertain[b] = why;   // order independent
        }
        res.stats.candidates += w.stats.candidates;
        res.stats.pruned += w.stats.pruned;
        res.stats.replicate_rejected += w.stats.replicate_rejected;
        res.stats.leaves += w.stats.leaves;
    }
    res.baskets.assign(certain.begin(), certain.end());
    for (auto& [b, why] : uncertain)
        if (!certain.count(b)) res.undecidable.push_back({b, why});
    return res;
}

// ---- checker -------------------------------------------------------------

std::string PairConstraintReport::verdict() const {
    if (!violations.empty()) return "inadmissible";
    if (!undecidable.empty()) return "undecidable";
    return "admissible";
}

std::optional<std::string> order_rule_violation(const std::vector<int>& orders) {
    if (orders.empty()) return std::nullopt;
    const int r = orders.front();
    if (!is_prime(r)) return "smallest invariant factor " + std::to_string(r) + " is not prime";
    for (int s : orders) {
        int x = s;
        while (x % r == 0) x /= r;
        if (x != 1) return "factor " + std::to_string(s) + " is not a power of " + std::to_string(r);
    }
    if (orders.size() >= 3 && orders[1] != r)
        return "three or more generators need the second factor equal to " + std::to_string(r);
    return std::nullopt;
}

PairConstraintReport check_basket(const FiniteAbelianGroup& g, const std::vector<LabeledSingularity>& entries,
                                  const CyclicBasketTable& table) {
    PairConstraintReport rep;
    for (const auto& q : entries) {
        try {
            validate_entry(g, q);
        } catch (const Error& e) {
            rep.violations.push_back({"label", e.what(), std::nullopt});
        }
    }
    if (!rep.violations.empty()) return rep;
    const Basket b(g, entries);
    rep.orbifold_mass = b.mass();
    rep.kc2_positive = rep.orbifold_mass < Rational(24);
    if (auto why = order_rule_violation(g.factor_orders())) rep.violations.push_back({"group-order", *why, std::nullopt});

    SlotState slots;
    for (const auto& c : g.elements()) {
        if (c.is_zero()) continue;
        const Basket y = torsion_part(b, c);
        if (y.empty()) {
            rep.violations.push_back({"closure", "Bt" + c.to_string() + " is empty", c});
            continue;
        }
        const auto m = membership(table, y, &slots);
        if (m.verdict == Membership::NotMember)
            rep.violations.push_back({"closure", "Bt" + c.to_string() + " not in box " +
                                                     std::to_string(g.class_order(c)) + ": " + m.reason, c});
        else if (m.verdict == Membership::Unknown)
            rep.undecidable.push_back({"closure", "Bt" + c.to_string() + ": " + m.reason, c});
    }
    for (int i = 0; i < g.rank(); ++i) {
        const int p = g.factor_orders()[static_cast<std::size_t>(i)];
        if (!is_prime(p)) continue;
        std::vector<LabeledSingularity> d;
        for (const auto& q : b.entries()) {
            bool only_i = q.labels[static_cast<std::size_t>(i)] != 0;
            for (int j = 0; j < g.rank() && only_i; ++j)
                if (j != i && q.labels[static_cast<std::size_t>(j)] != 0) only_i = false;
            if (only_i) d.push_back({q.germ, {q.labels[static_cast<std::size_t>(i)]}});
        }
        const auto gen = g.generator(i);
        if (d.empty()) {
            rep.violations.push_back({"replicate", "no point sees only e" + std::to_string(i + 1), gen});
            continue;
        }
        const auto copies = static_cast<int>(g.order() / p);
        std::vector<LabeledSingularity> all;
        for (int c = 0; c < copies; ++c) all.insert(all.end(), d.begin(), d.end());
        const auto m = membership(table, Basket(FiniteAbelianGroup::cyclic(p), std::move(all)), &slots);
        if (m.verdict == Membership::NotMember)
            rep.violations.push_back({"replicate", std::to_string(copies) + " copies of the e" + std::to_string(i + 1) +
                                                       "-only points are not in box " + std::to_string(p), gen});
        else if (m.verdict == Membership::Unknown)
            rep.undecidable.push_back({"replicate", "e" + std::to_string(i + 1) + ": " + m.reason, gen});
    }
    return rep;
}

PairConstraintReport check_basket(const Basket& b, const CyclicBasketTable& table) {
    return check_basket(b.group(), b.entries(), table);
}

// ---- admissible orders -----------------------------------------------------

namespace {

void invariant_tuples(int k, int max_order, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    const int lo = cur.empty() ? 2 : cur.back();
    for (int r = lo; r <= max_order; ++r) {
        if (!cur.empty() && r % cur.back() != 0) continue;
        cur.push_back(r);
        invariant_tuples(k, max_order, cur, out);
        cur.pop_back();
    }
}

// some box-r candidate splits into `copies` equal parts
bool replicate_possible(const CyclicBasketTable& t, int r, int copies) {
    auto splits = [&](const Basket& x) {
        const auto& es = x.entries();
        for (std::size_t i = 0; i < es.size();) {
            std::size_t j = i;
            while (j < es.size() && es[j] == es[i]) ++j;
            if ((j - i) % static_cast<std::size_t>(copies) != 0) return false;
            i = j;
        }
        return !es.empty();
    };
    for (const auto& x : t.known(r))
        if (splits(x)) return true;
    for (const auto& x : t.envelope(r))
        if (splits(x)) return true;
    return false;
}

} // namespace

OrderReport admissible_orders(int generators, int max_order, const CyclicBasketTable& table,
                              const AdmissibleOrderOptions& opts) {
    OrderReport rep;
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    if (generators >= 1) invariant_tuples(generators, max_order, cur, tuples);
    for (const auto& o : tuples) {
        OrderVerdict v{o, "excluded", "", 0};
        long long order = 1;
        for (int r : o) order *= r;
        if (auto why = order_rule_violation(o)) {
            v.reason = *why;
        } else if (auto miss = std::find_if(o.begin(), o.end(), [&](int r) { return !table.has_box(r); });
                   miss != o.end()) {
            v.reason = "no cyclic box of order " + std::to_string(*miss);
        } else if (generators >= 2 && !replicate_possible(table, o.front(), static_cast<int>(order / o.front()))) {
            v.reason = "no box-" + std::to_string(o.front()) + " basket splits into " +
                       std::to_string(order / o.front()) + " equal parts";
        } else if (!opts.run_enumeration || order > opts.max_group_order) {
            v.status = "undecidable";
            v.reason = "not enumerated";
        } else {
            const auto res = enumerate_baskets(FiniteAbelianGroup::from_factors(o), table, opts.enumeration);
            v.baskets = res.baskets.size();
            if (!res.baskets.empty()) {
                v.status = "admissible";
                v.reason = std::to_string(res.baskets.size()) + (res.baskets.size() == 1 ? " basket" : " baskets");
            } else if (!res.undecidable.empty()) {
                v.status = "undecidable";
                v.reason = std::to_string(res.undecidable.size()) + " undecidable baskets";
            } else {
                v.reason = "no label table completes";
            }
        }
        if (v.status == "admissible") rep.admissible.push_back(o);
        if (v.status == "undecidable") rep.undecidable.push_back(o);
        rep.details.push_back(std::move(v));
    }
    return rep;
}

} // namespace tfano
