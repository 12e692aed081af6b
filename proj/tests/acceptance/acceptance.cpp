// One pass/fail line per acceptance criterion; exits 1 if any fails.

#include "torsion_fano/basket_engine.hpp"
#include "torsion_fano/catalog.hpp"
#include "torsion_fano/molien.hpp"
#include "torsion_fano/orbifold_rr.hpp"
#include "torsion_fano/pipeline.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace tfano;

namespace {

// pinned budgets; all numeric comparisons are exact
constexpr double kEnumerationBudgetSeconds = 60.0;
constexpr double kOracleBudgetSeconds = 30.0;
constexpr int kOracleOrder = 12;
constexpr int kAugmentationOrder = 20;
constexpr int kIntegralityMaxN = 24;
constexpr int kRandomTrials = 200;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail.clear();
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
};

int failures = 0;

void report(int n, const Outcome& o) {
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    if (!o.pass) ++failures;
}

Outcome guarded(const std::function<Outcome()>& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        Outcome o;
        o.fail(std::string("exception: ") + e.what());
        return o;
    }
}

std::vector<long long> ci_series(const std::vector<int>& w, const std::vector<int>& d, int order) {
    std::vector<long long> a(static_cast<std::size_t>(order) + 1, 0);
    a[0] = 1;
    for (int e : d)
        for (int n = order; n >= e; --n) a[static_cast<std::size_t>(n)] -= a[static_cast<std::size_t>(n - e)];
    for (int e : w)
        for (int n = e; n <= order; ++n) a[static_cast<std::size_t>(n)] += a[static_cast<std::size_t>(n - e)];
    return a;
}

const std::map<std::string, std::size_t> kExpectedCounts = {{"Z2xZ2", 20}, {"Z2xZ4", 2},       {"Z3xZ3", 1},
                                                            {"Z2xZ8", 0},  {"Z2xZ2xZ2", 4},    {"Z2xZ2xZ2xZ2", 1}};

Outcome criterion1(const Catalog& cat, std::map<std::string, std::vector<Basket>>& found) {
    Outcome o;
    const auto t0 = Clock::now();
    std::ostringstream d;
    d << std::fixed << std::setprecision(2);
    for (const auto& [lit, want] : kExpectedCounts) {
        const auto g = FiniteAbelianGroup::parse(lit);
        const auto res = enumerate_baskets(g, cat.table());
        found[lit] = res.baskets;
        std::set<Basket> golden;
        for (const auto* b : cat.baskets_for(g)) golden.insert(canonicalize(b->basket));
        const std::set<Basket> got(res.baskets.begin(), res.baskets.end());
        d << lit << "=" << res.baskets.size() << " ";
        if (res.baskets.size() != want) o.fail(lit + " gives " + std::to_string(res.baskets.size()));
        if (got != golden) o.fail(lit + " differs from the listed baskets");
        if (!res.undecidable.empty()) o.fail(lit + " has undecidable branches");
    }
    const double secs = seconds_since(t0);
    d << "in " << secs << " s";
    if (secs >= kEnumerationBudgetSeconds) o.fail("over the time budget");
    if (o.pass) o.detail = d.str();
    return o;
}

Outcome criterion2(const Catalog& cat) {
    Outcome o;
    const auto two = admissible_orders(2, 8, cat.table());
    const std::vector<std::vector<int>> excluded = {{2, 6}, {3, 6}, {4, 4}, {4, 8}, {6, 6}, {8, 8}, {5, 5}};
    for (const auto& e : excluded) {
        bool seen = false;
        for (const auto& v : two.details)
            if (v.orders == e) {
                seen = true;
                if (v.status != "excluded") o.fail("(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ") is " + v.status);
            }
        if (!seen) o.fail("(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ") not examined");
    }
    if (two.admissible != std::vector<std::vector<int>>{{2, 2}, {2, 4}, {3, 3}}) o.fail("admissible pairs differ");
    const auto five = admissible_orders(5, 2, cat.table());
    if (!five.admissible.empty() || !five.undecidable.empty()) o.fail("a five-generator group survives");
    if (o.pass) o.detail = "7 pairs excluded, admissible (2,2),(2,4),(3,3); no five-generator group";
    return o;
}

// printed series of the Z/2+Z/4 quotient of three quadrics, degree 1
GradedSeries worked_series(const Catalog& cat, int order) {
    return equivariant_hilbert_series({Rational(1), cat.basket("Bt2,4.2").basket}, order);
}

Outcome criterion3(const Catalog& cat) {
    Outcome o;
    const auto s = worked_series(cat, 9);
    const auto& g = s.group;
    const std::vector<std::int64_t> identity = {1, 1, 3, 7, 17, 29, 47, 71, 105};
    const std::vector<std::int64_t> generic = {0, 1, 3, 8, 16, 29, 47, 72, 104};
    const std::vector<std::int64_t> square = {0, 0, 4, 8, 16, 28, 48, 72, 104, 144};
    auto check = [&](const GroupClass& c, const std::vector<std::int64_t>& want) {
        auto got = s.component(c);
        got.resize(want.size());
        if (got != want) o.fail("component " + class_monomial(c) + " differs");
    };
    check(g.zero(), identity);
    check(g.make_class({0, 2}), square);
    for (const auto& c : {g.make_class({0, 1}), g.make_class({0, 3}), g.make_class({1, 0}), g.make_class({1, 1}),
                          g.make_class({1, 2}), g.make_class({1, 3})})
        check(c, generic);
    if (o.pass) o.detail = "all 8 components through t^8 (and e2^2 at t^9) exact";
    return o;
}

Outcome criterion4(const Catalog& cat) {
    Outcome o;
    const auto s = worked_series(cat, 12);
    const auto& g = s.group;
    auto cls = [&](int a, int b) { return g.make_class({a, b}); };
    const std::vector<DenominatorFactor> den = {{cls(0, 0), 1}, {cls(0, 1), 1}, {cls(0, 3), 1}, {cls(1, 0), 1},
                                                {cls(1, 1), 1}, {cls(1, 2), 1}, {cls(1, 3), 1}};
    GroupRingPolynomial want(g);
    const auto one = GroupRingElement::one(g);
    const auto e22 = GroupRingElement::delta(g, cls(0, 2));
    want.add_term(0, one);
    want.add_term(2, one * -2 - e22);
    want.add_term(4, one + e22 * 2);
    want.add_term(6, e22 * -1);
    auto got = recover_numerator(s, den, 6);
    got.trim();
    want.trim();
    if (!(got == want)) o.fail("numerator " + format_numerator(got));
    if (o.pass) o.detail = format_numerator(got);
    return o;
}

Outcome criterion5(const Catalog& cat) {
    Outcome o;
    const auto t0 = Clock::now();
    int n = 0;
    for (const auto& r : cat.records()) {
        const auto& y = cat.cover(r.cover);
        const auto rr = equivariant_hilbert_series(quotient_data(cat, r), kOracleOrder);
        const auto mol = molien_series(y, canonical_lift(y, record_action(r)), kOracleOrder);
        if (!(rr == mol)) o.fail(r.name + " RR and Molien differ");
        ++n;
    }
    const double secs = seconds_since(t0);
    if (secs >= kOracleBudgetSeconds) o.fail("over the time budget");
    if (n != 5) o.fail("expected 5 records, found " + std::to_string(n));
    if (o.pass) {
        std::ostringstream d;
        d << n << " records equal per class through t^" << kOracleOrder << " in " << std::fixed << std::setprecision(3)
          << secs << " s";
        o.detail = d.str();
    }
    return o;
}

Outcome criterion6(const Catalog& cat) {
    Outcome o;
    for (const auto& r : cat.records()) {
        const auto& y = cat.cover(r.cover);
        const auto want = ci_series(y.weights, y.equation_degrees, kAugmentationOrder);
        const auto got = equivariant_hilbert_series(quotient_data(cat, r), kAugmentationOrder).augmented();
        for (int k = 0; k <= kAugmentationOrder; ++k)
            if (got[static_cast<std::size_t>(k)] != want[static_cast<std::size_t>(k)]) {
                o.fail(r.name + " at t^" + std::to_string(k));
                break;
            }
    }
    if (o.pass) o.detail = "class sums equal the cover series through t^" + std::to_string(kAugmentationOrder);
    return o;
}

Outcome criterion7(const Catalog& cat) {
    Outcome o;
    const std::map<std::string, Rational> want = {{"ex3", Rational(1)},  {"no1", Rational(1, 2)}, {"no1a", Rational(2)},
                                                  {"no1b", Rational(1)}, {"no1c", Rational(1)}};
    for (const auto& [key, deg] : want) {
        const auto& r = cat.record(key);
        const Rational q = cat.cover(r.cover).degree() / Rational(r.group.order());
        if (q != deg || r.degree != deg) o.fail(key + " degree " + to_string(q));
        const auto b = cat.claimed_basket(r);
        for (const auto& c : r.group.elements())
            if (!c.is_zero() && torsion_chi_at_zero(b, c) != Rational(0)) o.fail(key + " chi(" + c.to_string() + ") != 0");
    }
    if (o.pass) o.detail = "8/8=1, 8/4=2, 2/4=1/2; chi(c)=0 for every nonzero class";
    return o;
}

Outcome criterion8(const Catalog& cat) {
    Outcome o;
    for (const auto* key : {"no1", "no1a"}) {
        const auto& r = cat.record(key);
        const auto& y = cat.cover(r.cover);
        const auto fl = fixed_locus_analysis(y, canonical_lift(y, record_action(r)));
        if (!fl.isolated()) o.fail(std::string(key) + " has non-isolated fixed loci");
        if (canonicalize(fl.predicted) != canonicalize(cat.claimed_basket(r))) o.fail(std::string(key) + " basket differs");
        if (r.cover == "Y222")
            for (const auto& e : fl.elements)
                if (!e.element.is_zero() && e.fixed_points != 8)
                    o.fail(std::string(key) + " element " + e.element.to_string() + " fixes " + std::to_string(e.fixed_points));
    }
    if (o.pass) o.detail = "No. 1 and No. 1a predicted baskets match; 8 fixed points per involution";
    return o;
}

GroupRingElement random_element(const FiniteAbelianGroup& g, std::mt19937& rng) {
    GroupRingElement x(g);
    for (const auto& c : g.elements()) x.add_to(c, static_cast<int>(rng() % 11) - 5);
    return x;
}

Outcome criterion9(const Catalog& cat, const std::map<std::string, std::vector<Basket>>& found) {
    Outcome o;
    std::mt19937 rng(20261016);
    std::ostringstream d;
    const std::vector<std::string> groups = {"Z2xZ2", "Z2xZ4", "Z3xZ3", "Z2xZ2xZ2"};

    long long ring = 0;
    for (const auto& lit : groups) {
        const auto g = FiniteAbelianGroup::parse(lit);
        for (int k = 0; k < kRandomTrials; ++k) {
            const auto a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
            if (!(a * (b + c) == a * b + a * c) || !((a * b) * c == a * (b * c)) || !(a * b == b * a) ||
                (a * b).augmentation() != a.augmentation() * b.augmentation())
                o.fail("group ring axiom over " + lit);
            ++ring;
        }
    }
    d << ring << " ring triples, ";

    long long canon = 0;
    for (const auto& [lit, baskets] : found)
        for (const auto& b : baskets) {
            const auto& auts = cached_automorphisms(b.group());
            if (canonicalize(b) != b) o.fail("canonicalize not idempotent");
            for (std::size_t k = 0; k < auts.size(); k += 1 + auts.size() / 64) {
                if (canonicalize(apply_automorphism(b, auts[k])) != b) o.fail("orbit not constant over " + lit);
                ++canon;
            }
        }
    d << canon << " orbit images, ";

    long long trips = 0;
    for (const auto& lit : groups) {
        const auto g = FiniteAbelianGroup::parse(lit);
        for (int k = 0; k < kRandomTrials / 4; ++k) {
            RationalPresentation rp;
            rp.numerator = GroupRingPolynomial(g);
            const int deg = 1 + static_cast<int>(rng() % 6);
            for (int n = 0; n <= deg; ++n) rp.numerator.add_term(n, random_element(g, rng));
            rp.numerator.trim();
            const int f = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < f; ++i)
                rp.denominator.push_back({g.class_at(rng() % static_cast<std::size_t>(g.order())), 1 + static_cast<int>(rng() % 3)});
            auto back = recover_numerator(expand(rp, deg + 6), rp.denominator, deg);
            back.trim();
            if (!(back == rp.numerator)) o.fail("expand/recover round trip over " + lit);
            ++trips;
        }
    }
    d << trips << " round trips, ";

    long long periodic = 0;
    for (int r : {2, 3, 4, 5, 6, 7, 8})
        for (int a = 1; 2 * a <= r; ++a) {
            if (gcd64(a, r) != 1) continue;
            const SingularityGerm q(r, a);
            for (int i = -2 * r; i < 3 * r; ++i) {
                if (local_correction(q, i) != local_correction(q, i + r)) o.fail("correction not periodic for " + q.to_string());
                ++periodic;
            }
        }
    d << periodic << " periodicity cases, ";

    // twisting by torsion changes chi by an integer, for every enumerated
    // basket at every catalog degree
    std::set<Rational> degrees;
    for (const auto& r : cat.records()) degrees.insert(r.degree);
    long long integral = 0;
    for (const auto& [lit, baskets] : found)
        for (const auto& b : baskets)
            for (const auto& deg : degrees) {
                const FanoNumericalData x{deg, b};
                for (int n = 0; n <= kIntegralityMaxN; ++n) {
                    const Rational base = twisted_chi(x, n, b.group().zero());
                    for (const auto& c : b.group().elements()) {
                        if ((twisted_chi(x, n, c) - base).denominator() != 1)
                            o.fail("non-integral twist for " + b.to_string());
                        ++integral;
                    }
                }
            }
    for (const auto& r : cat.records())
        if (!torsion_vanishing_check(quotient_data(cat, r)).passed) o.fail(r.name + " chi not integral");
    d << integral << " integrality cases";
    if (o.pass) o.detail = d.str();
    return o;
}

} // namespace

int main() {
    Catalog cat;
    try {
        cat = Catalog::load(TFANO_TEST_DATA_DIR);
    } catch (const std::exception& e) {
        std::cerr << "cannot load catalog: " << e.what() << "\n";
        return 3;
    }
    std::map<std::string, std::vector<Basket>> found;
    report(1, guarded([&] { return criterion1(cat, found); }));
    report(2, guarded([&] { return criterion2(cat); }));
    report(3, guarded([&] { return criterion3(cat); }));
    report(4, guarded([&] { return criterion4(cat); }));
    report(5, guarded([&] { return criterion5(cat); }));
    report(6, guarded([&] { return criterion6(cat); }));
    report(7, guarded([&] { return criterion7(cat); }));
    report(8, guarded([&] { return criterion8(cat); }));
    report(9, guarded([&] { return criterion9(cat, found); }));
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria pass")) << std::endl;
    return failures ? 1 : 0;
}
