#include "torsion_fano/pipeline.hpp"
#include "torsion_fano/basket_engine.hpp"
#include "torsion_fano/errors.hpp"
#include "torsion_fano/molien.hpp"
#include "torsion_fano/series.hpp"

#include "json_io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tfano {

using detail::json;

bool VerifyReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerifyReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

DiagonalAction record_action(const QuotientRecord& r) {
    return DiagonalAction{r.group, r.coordinate_characters, r.equation_characters};
}

FanoNumericalData quotient_data(const Catalog& cat, const QuotientRecord& r) {
    return FanoNumericalData{r.degree, cat.claimed_basket(r)};
}

namespace {

std::string seq_string(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// first (degree, class) where two series differ
std::optional<std::string> series_diff(const GradedSeries& a, const GradedSeries& b) {
    if (a.group != b.group) return "different groups";
    for (int n = 0; n <= std::min(a.order(), b.order()); ++n)
        for (const auto& c : a.group.elements())
            if (a.at(n).coefficient(c) != b.at(n).coefficient(c))
                return "t^" + std::to_string(n) + " class " + class_monomial(c) + ": " +
                       std::to_string(a.at(n).coefficient(c)) + " vs " + std::to_string(b.at(n).coefficient(c));
    return std::nullopt;
}

std::vector<DenominatorFactor> coordinate_factors(const CoverModel& y, const DiagonalAction& act) {
    std::vector<DenominatorFactor> f;
    for (std::size_t i = 0; i < y.weights.size(); ++i) f.push_back({act.coordinate_characters[i], y.weights[i]});
    std::sort(f.begin(), f.end());
    return f;
}

std::string plural(std::size_t n, const std::string& word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

std::string factors_string(const std::vector<DenominatorFactor>& f) {
    std::string s;
    // [class]t^weight, weight 1 written as t
    for (const auto& x : f) {
        s += (s.empty() ? "[" : " [") + class_monomial(x.cls) + "]t";
        if (x.weight != 1) s += "^" + std::to_string(x.weight);
    }
    return s;
}

DiagonalAction trivial_action(const CoverModel& y) {
    const FiniteAbelianGroup g;
    return DiagonalAction{g, std::vector<GroupClass>(y.weights.size(), g.zero()),
                          std::vector<GroupClass>(y.equation_degrees.size(), g.zero())};
}

template <class F>
CheckResult run_check(const std::string& name, F&& f) {
    CheckResult c{name, false, ""};
    try {
        f(c);
    } catch (const std::exception& e) {
        c.passed = false;
        c.detail = e.what();
    }
    return c;
}

} // namespace

VerifyReport verify_record(const Catalog& cat, const QuotientRecord& r, int order) {
    VerifyReport rep;
    rep.record = r.name;
    const CoverModel& y = cat.cover(r.cover);
    const DiagonalAction raw = record_action(r);

    rep.checks.push_back(run_check("degree", [&](CheckResult& c) {
        const Rational q = y.degree() / Rational(r.group.order());
        c.passed = q == r.degree;
        c.detail = to_string(y.degree()) + "/" + std::to_string(r.group.order()) + " = " + to_string(q) +
                   ", stated " + to_string(r.degree);
    }));

    rep.checks.push_back(run_check("equations", [&](CheckResult& c) {
        std::vector<std::string> dims;
        c.passed = true;
        for (int j = 0; j < static_cast<int>(y.equation_degrees.size()); ++j) {
            const auto sp = invariant_equation_space(y, raw, j);
            dims.push_back(std::to_string(sp.dimension()));
            for (const auto& shape : r.equation_shapes) {
                if (shape.character != sp.character) continue;
                std::set<std::string> have, want(shape.monomials.begin(), shape.monomials.end());
                for (const auto& m : sp.monomials) have.insert(monomial_string(m));
                if (have != want) {
                    c.passed = false;
                    c.detail = "monomials of character " + sp.character.to_string() + " differ from the printed shape; ";
                }
            }
        }
        std::string s;
        for (const auto& d : dims) s += (s.empty() ? "" : ",") + d;
        c.detail += "equation space dimensions " + s;
    }));

    rep.checks.push_back(run_check("basket", [&](CheckResult& c) {
        const auto pr = check_basket(cat.basket(r.torsion_basket).basket, cat.table());
        c.passed = pr.admissible();
        c.detail = r.torsion_basket + " " + pr.verdict();
        for (const auto& v : pr.violations) c.detail += "; " + v.rule + ": " + v.detail;
        for (const auto& v : pr.undecidable) c.detail += "; undecidable " + v.rule + ": " + v.detail;
    }));

    const FanoNumericalData x = quotient_data(cat, r);

    rep.checks.push_back(run_check("torsion-vanishing", [&](CheckResult& c) {
        const auto tv = torsion_vanishing_check(x);
        c.passed = tv.passed;
        c.detail = "integrality checked to n=" + std::to_string(tv.checked_up_to);
        for (const auto& f : tv.failures)
            c.detail += "; " + f.kind + " at " + f.cls.to_string() + " n=" + std::to_string(f.n) + " (" +
                        to_string(f.value) + ")";
    }));

    rep.checks.push_back(run_check("cover", [&](CheckResult& c) {
        const Basket up = cover_by_group(x.basket);
        c.passed = up.entries() == y.basket.entries();
        c.detail = "cover basket " + up.to_string() + ", expected " + y.basket.to_string();
    }));

    const DiagonalAction lifted = canonical_lift(y, raw);
    std::optional<GradedSeries> rr;
    rep.checks.push_back(run_check("series", [&](CheckResult& c) {
        rr = equivariant_hilbert_series(x, order);
        const GradedSeries mol = molien_series(y, lifted, order);
        const auto d = series_diff(*rr, mol);
        c.passed = !d;
        c.detail = d ? "RR and Molien differ at " + *d : "RR equals Molien per class through t^" + std::to_string(order);
    }));

    rep.checks.push_back(run_check("augmentation", [&](CheckResult& c) {
        if (!rr) throw InconsistentSeriesError("no RR series");
        const auto up = molien_series(y, trivial_action(y), order).augmented();
        c.passed = rr->augmented() == up;
        c.detail = "class sums " + seq_string(rr->augmented()) + (c.passed ? "" : " vs cover " + seq_string(up));
    }));

    rep.checks.push_back(run_check("generators", [&](CheckResult& c) {
        if (!rr) throw InconsistentSeriesError("no RR series");
        const auto inf = infer_generators(*rr);
        const auto want = coordinate_factors(y, lifted);
        c.passed = inf.generators == want;
        c.detail = "inferred " + factors_string(inf.generators) + (c.passed ? "" : "; action gives " + factors_string(want));
    }));

    rep.checks.push_back(run_check("fixed-locus", [&](CheckResult& c) {
        const auto fl = fixed_locus_analysis(y, lifted);
        const Basket pred = canonicalize(fl.predicted);
        const Basket claim = canonicalize(x.basket);
        c.passed = fl.isolated() && pred == claim;
        c.detail = "predicted " + fl.predicted.to_string();
        for (const auto& w : fl.warnings) c.detail += "; " + w;
    }));

    return rep;
}

// ---- commands ----------------------------------------------------------

namespace {

json series_json(const GradedSeries& s) {
    json comp = json::object();
    for (const auto& c : s.group.elements()) comp[class_monomial(c)] = s.component(c);
    return comp;
}

std::string basket_label(const Catalog& cat, const Basket& canonical) {
    for (const auto* b : cat.baskets_for(canonical.group()))
        if (canonicalize(b->basket) == canonical) return b->name;
    return "";
}

json basket_json(const Catalog& cat, const Basket& b) {
    json j = {{"basket", b.to_string()}, {"entries", detail::entries_to_json(b)}};
    if (auto n = basket_label(cat, b); !n.empty()) j["name"] = n;
    return j;
}

std::string group_literal_error(const std::string& s) { return "bad group '" + s + "'"; }

struct EnumerationSummary {
    EnumerationResult res;
    std::vector<std::string> missing, extra;   // against the listed baskets
};

EnumerationSummary enumerate_and_compare(const Catalog& cat, const CyclicBasketTable& table, const FiniteAbelianGroup& g,
                                         unsigned threads) {
    EnumerationSummary s;
    EnumerationOptions eo;
    eo.threads = threads;
    s.res = enumerate_baskets(g, table, eo);
    std::set<Basket> found(s.res.baskets.begin(), s.res.baskets.end());
    std::set<Basket> listed;
    for (const auto* b : cat.baskets_for(g)) {
        const Basket cb = canonicalize(b->basket);
        listed.insert(cb);
        if (!found.count(cb)) s.missing.push_back(b->name);
    }
    for (const auto& b : s.res.baskets)
        if (!listed.count(b)) s.extra.push_back(b.to_string());
    return s;
}

json stats_json(const EnumerationStats& st) {
    return {{"candidates", st.candidates},
            {"pruned", st.pruned},
            {"replicate_rejected", st.replicate_rejected},
            {"leaves", st.leaves}};
}

CommandOutput input_error(const std::exception& e, const CommandOptions& opts) {
    CommandOutput out;
    out.exit_code = kExitInputError;
    if (opts.json)
        out.text = json({{"verdict", "error"}, {"error", e.what()}, {"violations", json::array()}, {"undecidable", json::array()}})
                       .dump(2) + "\n";
    else
        out.text = std::string("error: ") + e.what() + "\n";
    return out;
}

std::string orders_string(const std::vector<int>& o) {
    std::string s = "(";
    for (std::size_t i = 0; i < o.size(); ++i) s += (i ? "," : "") + std::to_string(o[i]);
    return s + ")";
}

} // namespace

CommandOutput run_enumerate(const Catalog& cat, const std::string& group, const std::optional<std::string>& table_path,
                            bool golden, const CommandOptions& opts) {
    try {
        FiniteAbelianGroup g;
        try {
            g = FiniteAbelianGroup::parse(group);
        } catch (const MalformedClassError&) {
            throw CatalogError(group_literal_error(group));
        }
        const CyclicBasketTable table = table_path ? CyclicBasketTable::load(*table_path) : cat.table();
        const auto s = enumerate_and_compare(cat, table, g, opts.threads);
        const bool match = s.missing.empty() && s.extra.empty();

        CommandOutput out;
        std::string verdict = "ok";
        if (golden && !match) {
            out.exit_code = kExitMismatch;
            verdict = "mismatch";
        } else if (!s.res.undecidable.empty()) {
            out.exit_code = kExitUndecidable;
            verdict = "undecidable";
        } else if (golden) {
            verdict = "match";
        }

        if (opts.json) {
            json j = {{"group", g.to_string()}, {"verdict", verdict}, {"count", s.res.baskets.size()}};
            json bs = json::array(), und = json::array(), viol = json::array();
            for (const auto& b : s.res.baskets) bs.push_back(basket_json(cat, b));
            for (const auto& u : s.res.undecidable) und.push_back({{"basket", u.basket.to_string()}, {"reason", u.reason}});
            if (golden) {
                for (const auto& m : s.missing) viol.push_back({{"rule", "golden"}, {"detail", "listed basket " + m + " not found"}});
                for (const auto& e : s.extra) viol.push_back({{"rule", "golden"}, {"detail", "not listed: " + e}});
            }
            j["baskets"] = bs;
            j["undecidable"] = und;
            j["violations"] = viol;
            j["stats"] = stats_json(s.res.stats);
            out.text = j.dump(2) + "\n";
        } else {
            std::ostringstream os;
            os << "group " << g.to_string() << ": " << plural(s.res.baskets.size(), "basket");
            if (golden) os << " (golden " << (match ? "match" : "MISMATCH") << ")";
            os << "\n";
            for (const auto& b : s.res.baskets) {
                const auto n = basket_label(cat, b);
                os << "  " << (n.empty() ? "-" : n) << "  " << b.to_string() << "\n";
            }
            os << "undecidable: " << s.res.undecidable.size() << "\n";
            for (const auto& u : s.res.undecidable) os << "  " << u.basket.to_string() << "  [" << u.reason << "]\n";
            if (golden) {
                for (const auto& m : s.missing) os << "missing listed basket " << m << "\n";
                for (const auto& e : s.extra) os << "not listed: " << e << "\n";
            }
            os << "candidates " << s.res.stats.candidates << ", pruned " << s.res.stats.pruned << ", replicate-rejected "
               << s.res.stats.replicate_rejected << ", leaves " << s.res.stats.leaves << "\n";
            out.text = os.str();
        }
        return out;
    } catch (const std::exception& e) {
        return input_error(e, opts);
    }
}

CommandOutput run_hilbert(const Catalog& cat, const std::string& target, int order, bool closed_form,
                          const CommandOptions& opts) {
    try {
        if (order < 0) throw CatalogError("order must be non-negative");
        GradedSeries s;
        std::optional<std::vector<DenominatorFactor>> denominators;
        int numerator_bound = -1;
        std::string source;

        if (cat.has_record(target)) {
            const auto& r = cat.record(target);
            const auto& y = cat.cover(r.cover);
            s = equivariant_hilbert_series(quotient_data(cat, r), order);
            denominators = coordinate_factors(y, canonical_lift(y, record_action(r)));
            numerator_bound = 0;
            for (int d : y.equation_degrees) numerator_bound += d;
            source = "record " + r.name;
        } else if (cat.has_cover(target)) {
            const auto& y = cat.cover(target);
            const auto act = trivial_action(y);
            s = molien_series(y, act, order);
            denominators = coordinate_factors(y, act);
            numerator_bound = 0;
            for (int d : y.equation_degrees) numerator_bound += d;
            source = "cover " + y.name;
        } else {
            const auto colon = target.rfind(':');
            if (colon == std::string::npos) throw CatalogError("unknown record or cover '" + target + "'");
            const auto& b = cat.basket(target.substr(0, colon));
            FanoNumericalData x{parse_rational(target.substr(colon + 1)), b.basket};
            s = equivariant_hilbert_series(x, order);
            source = "basket " + b.name + " with degree " + to_string(x.degree);
        }

        const auto gens = infer_generators(s);
        if (!denominators) {
            denominators = gens.generators;
            numerator_bound = std::max(0, order - 2);
        }

        std::optional<GroupRingPolynomial> numer;
        std::string failure;
        if (closed_form) {
            try {
                numer = recover_numerator(s, *denominators, numerator_bound);
            } catch (const NotAMatchError& e) {
                failure = e.what();
                // residual tail: what the denominators leave beyond the bound
                GradedSeries work = s;
                for (const auto& f : *denominators)
                    for (int n = work.order(); n >= f.weight; --n)
                        work.at(n) -= GroupRingElement::delta(s.group, f.cls) * work.at(n - f.weight);
                std::string tail;
                for (int n = std::max(0, numerator_bound + 1); n <= work.order(); ++n)
                    if (!work.at(n).is_zero()) tail += " t^" + std::to_string(n) + ": " + work.at(n).to_string() + ";";
                if (!tail.empty()) failure += "; residual tail" + tail;
            }
        }

        CommandOutput out;
        if (closed_form && !numer) out.exit_code = kExitMismatch;
        if (opts.json) {
            json j = {{"target", target}, {"source", source}, {"group", s.group.to_string()}, {"order", order}};
            j["series"] = series_json(s);
            j["augmented"] = s.augmented();
            json g = json::array();
            for (const auto& f : gens.generators) g.push_back({{"class", class_monomial(f.cls)}, {"weight", f.weight}});
            j["generators"] = g;
            if (closed_form) {
                if (numer)
                    j["closed_form"] = {{"numerator", format_numerator(*numer)}, {"denominator", format_denominator(*denominators)}};
                else
                    j["closed_form"] = {{"error", failure}};
            }
            out.text = j.dump(2) + "\n";
        } else {
            std::ostringstream os;
            os << source << ", group " << s.group.to_string() << "\n";
            os << format_series(s);
            os << "sum over classes: " << format_integer_series(s.augmented()) << "\n";
            os << "generators: " << factors_string(gens.generators) << "\n";
            if (closed_form) {
                if (numer)
                    os << "closed form: (" << format_numerator(*numer) << ") / " << format_denominator(*denominators) << "\n";
                else
                    os << "closed form failed: " << failure << "\n";
            }
            out.text = os.str();
        }
        return out;
    } catch (const std::exception& e) {
        return input_error(e, opts);
    }
}

namespace {

json verify_json(const VerifyReport& rep) {
    json checks = json::array(), viol = json::array();
    for (const auto& c : rep.checks) {
        checks.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        if (!c.passed) viol.push_back({{"rule", c.name}, {"detail", c.detail}});
    }
    return {{"record", rep.record},
            {"verdict", rep.passed() ? "pass" : "fail"},
            {"checks", checks},
            {"violations", viol},
            {"undecidable", json::array()}};
}

std::string verify_text(const VerifyReport& rep) {
    std::ostringstream os;
    os << rep.record << ": " << (rep.passed() ? "pass" : "FAIL") << "\n";
    for (const auto& c : rep.checks)
        os << "  " << (c.passed ? "ok  " : "FAIL") << " " << c.name << ": " << c.detail << "\n";
    return os.str();
}

} // namespace

CommandOutput run_verify(const Catalog& cat, const std::string& record, int order, const CommandOptions& opts) {
    try {
        const auto rep = verify_record(cat, cat.record(record), order);
        CommandOutput out;
        out.exit_code = rep.passed() ? kExitOk : kExitMismatch;
        out.text = opts.json ? verify_json(rep).dump(2) + "\n" : verify_text(rep);
        return out;
    } catch (const std::exception& e) {
        return input_error(e, opts);
    }
}

CommandOutput run_reproduce(const Catalog& cat, const CommandOptions& opts) {
    try {
        CommandOutput out;
        json doc = json::object();
        std::ostringstream os;

        // torsion basket tables
        json tables = json::array();
        os << "== Torsion baskets\n";
        for (const char* lit : {"Z2xZ2", "Z2xZ4", "Z3xZ3", "Z2xZ8", "Z2xZ2xZ2", "Z2xZ2xZ2xZ2"}) {
            const auto g = FiniteAbelianGroup::parse(lit);
            const auto s = enumerate_and_compare(cat, cat.table(), g, opts.threads);
            const bool match = s.missing.empty() && s.extra.empty();
            if (!match) out.exit_code = kExitMismatch;
            else if (!s.res.undecidable.empty() && out.exit_code == kExitOk) out.exit_code = kExitUndecidable;
            json bs = json::array();
            for (const auto& b : s.res.baskets) bs.push_back(basket_json(cat, b));
            tables.push_back({{"group", g.to_string()},
                              {"count", s.res.baskets.size()},
                              {"golden", match ? "match" : "mismatch"},
                              {"undecidable", s.res.undecidable.size()},
                              {"baskets", bs}});
            os << g.to_string() << ": " << plural(s.res.baskets.size(), "basket") << ", golden " << (match ? "match" : "MISMATCH")
               << ", undecidable " << s.res.undecidable.size() << "\n";
            for (const auto& b : s.res.baskets) {
                const auto n = basket_label(cat, b);
                os << "  " << (n.empty() ? "-" : n) << "  " << b.to_string() << "\n";
            }
        }
        doc["tables"] = tables;

        // order exclusions
        json orders = json::array();
        os << "\n== Group orders\n";
        AdmissibleOrderOptions ao;
        ao.enumeration.threads = opts.threads;
        for (const auto& [k, m] : std::vector<std::pair<int, int>>{{2, 8}, {3, 4}, {4, 2}, {5, 2}}) {
            const auto rep = admissible_orders(k, m, cat.table(), ao);
            json det = json::array();
            os << k << " generators, factors <= " << m << ":\n";
            for (const auto& d : rep.details) {
                det.push_back({{"orders", d.orders}, {"status", d.status}, {"reason", d.reason}, {"baskets", d.baskets}});
                os << "  " << orders_string(d.orders) << " " << d.status << ": " << d.reason << "\n";
            }
            json adm = json::array();
            for (const auto& a : rep.admissible) adm.push_back(a);
            orders.push_back({{"generators", k}, {"max_order", m}, {"admissible", adm}, {"details", det}});
            os << "  admissible:";
            if (rep.admissible.empty()) os << " none";
            for (const auto& a : rep.admissible) os << " " << orders_string(a);
            os << "\n";
        }
        doc["orders"] = orders;

        // worked series
        os << "\n== Equivariant Hilbert series\n";
        const auto h = run_hilbert(cat, "ex3-Y222-Z2xZ4", 9, true, CommandOptions{opts.json, opts.threads});
        if (h.exit_code != kExitOk) out.exit_code = kExitMismatch;
        if (opts.json) doc["hilbert"] = json::parse(h.text);
        os << h.text;

        // records
        json recs = json::array();
        os << "\n== Quotient records\n";
        for (const auto& r : cat.records()) {
            const auto rep = verify_record(cat, r, 12);
            if (!rep.passed()) out.exit_code = kExitMismatch;
            recs.push_back(verify_json(rep));
            os << verify_text(rep);
        }
        doc["records"] = recs;

        out.text = opts.json ? doc.dump(2) + "\n" : os.str();
        return out;
    } catch (const std::exception& e) {
        return input_error(e, opts);
    }
}

} // namespace tfano
