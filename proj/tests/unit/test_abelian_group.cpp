#include <gtest/gtest.h>

#include "torsion_fano/abelian_group.hpp"
#include "torsion_fano/errors.hpp"

#include <map>
#include <random>
#include <set>

using namespace tfano;

namespace {

// Counts bijective homomorphisms by brute force: every tuple of images whose
// orders respect the relations r_i e_i = 0, kept if the induced map hits
// every element. Independent of enumerate_automorphisms' pruning.
long long brute_force_aut_count(const FiniteAbelianGroup& g) {
    const auto elems = g.elements();
    const int k = g.rank();
    long long count = 0;
    std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
    while (true) {
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            ok = g.scale(elems[pick[static_cast<std::size_t>(i)]], g.factor_orders()[static_cast<std::size_t>(i)]).is_zero();
        if (ok) {
            std::set<GroupClass> image;
            for (const auto& c : elems) {
                GroupClass s = g.zero();
                for (int i = 0; i < k; ++i) s = g.add(s, g.scale(elems[pick[static_cast<std::size_t>(i)]], c[static_cast<std::size_t>(i)]));
                image.insert(s);
            }
            if (image.size() == elems.size()) ++count;
        }
        int i = k - 1;
        while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == elems.size()) pick[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
    }
    return count;
}

} // namespace

TEST(FiniteAbelianGroup, InvariantFactorsFromAnyFactorList) {
    EXPECT_EQ(FiniteAbelianGroup::from_factors({4, 2}).factor_orders(), (std::vector<int>{2, 4}));
    EXPECT_EQ(FiniteAbelianGroup::from_factors({2, 3}).factor_orders(), (std::vector<int>{6}));
    EXPECT_EQ(FiniteAbelianGroup::from_factors({6, 4}).factor_orders(), (std::vector<int>{2, 12}));
    EXPECT_EQ(FiniteAbelianGroup::from_factors({1, 1}).factor_orders(), std::vector<int>{});
    EXPECT_THROW(FiniteAbelianGroup::from_factors({0}), MalformedClassError);
}

TEST(FiniteAbelianGroup, ParseAndPrint) {
    EXPECT_EQ(FiniteAbelianGroup::parse("Z2xZ4").to_string(), "Z2xZ4");
    EXPECT_EQ(FiniteAbelianGroup::parse(" z2 X z2 x Z2 ").to_string(), "Z2xZ2xZ2");
    EXPECT_EQ(FiniteAbelianGroup::parse("Z4xZ2"), FiniteAbelianGroup::parse("Z2xZ4"));
    EXPECT_TRUE(FiniteAbelianGroup::parse("Z1").is_trivial());
    EXPECT_TRUE(FiniteAbelianGroup::parse("trivial").is_trivial());
    EXPECT_EQ(FiniteAbelianGroup().to_string(), "Z1");
    EXPECT_THROW(FiniteAbelianGroup::parse("Z2xQ4"), MalformedClassError);
    EXPECT_THROW(FiniteAbelianGroup::parse("Z"), MalformedClassError);
    EXPECT_THROW(FiniteAbelianGroup::parse(""), MalformedClassError);
}

TEST(FiniteAbelianGroup, ArithmeticReducesModFactors) {
    const auto g = FiniteAbelianGroup::parse("Z2xZ4");
    const auto a = g.make_class({1, 3});
    const auto b = g.make_class({1, 2});
    EXPECT_EQ(g.add(a, b), g.make_class({0, 1}));
    EXPECT_EQ(g.negate(a), g.make_class({1, 1}));
    EXPECT_EQ(g.scale(a, -1), g.negate(a));
    EXPECT_EQ(g.make_class({-1, 9}), g.make_class({1, 1}));
    EXPECT_EQ(g.class_order(a), 4);
    EXPECT_EQ(g.class_order(b), 2);
    EXPECT_EQ(g.class_order(g.zero()), 1);
    EXPECT_THROW(g.make_class({1}), MalformedClassError);
    EXPECT_THROW(g.validate(GroupClass({2, 0})), MalformedClassError);
}

TEST(FiniteAbelianGroup, DenseIndexRoundTrip) {
    for (const auto* lit : {"Z2xZ4", "Z3xZ3", "Z2xZ2xZ2", "Z6", "Z1"}) {
        const auto g = FiniteAbelianGroup::parse(lit);
        const auto elems = g.elements();
        ASSERT_EQ(static_cast<std::int64_t>(elems.size()), g.order()) << lit;
        EXPECT_TRUE(elems.front().is_zero());
        for (std::size_t i = 0; i < elems.size(); ++i) {
            EXPECT_EQ(g.index_of(elems[i]), i);
            EXPECT_EQ(g.class_at(i), elems[i]);
        }
        EXPECT_TRUE(std::is_sorted(elems.begin(), elems.end()));
    }
}

TEST(CharacterPairing, ValuesAndMismatch) {
    const auto g = FiniteAbelianGroup::parse("Z2xZ4");
    // exponent N = 4: e1 contributes 2 per unit, e2 contributes 1
    EXPECT_EQ(pairing_exponent(g, g.make_class({1, 1}), g.make_class({1, 3})), (2 + 3) % 4);
    const auto v = character_pairing(g, Character({0, 2}), g.make_class({0, 1}));
    EXPECT_EQ(v.exponent, 2);
    EXPECT_EQ(v.modulus, 4);
    EXPECT_THROW(character_pairing(g, Character({1}), g.zero()), GroupMismatchError);
}

TEST(CharacterPairing, IsBilinearAndNondegenerate) {
    const auto g = FiniteAbelianGroup::parse("Z2xZ4");
    const auto elems = g.elements();
    const int n = g.exponent();
    for (const auto& a : elems) {
        bool trivial_everywhere = true;
        for (const auto& b : elems) {
            for (const auto& c : elems)
                EXPECT_EQ(pairing_exponent(g, a, g.add(b, c)),
                          (pairing_exponent(g, a, b) + pairing_exponent(g, a, c)) % n);
            if (pairing_exponent(g, a, b) != 0) trivial_everywhere = false;
        }
        EXPECT_EQ(trivial_everywhere, a.is_zero());
    }
}

TEST(Automorphisms, CountsMatchBruteForce) {
    const std::map<std::string, long long> known = {
        {"Z2xZ2", 6}, {"Z2xZ4", 8}, {"Z3xZ3", 48}, {"Z2xZ2xZ2", 168}, {"Z2xZ8", 16}, {"Z4", 2}, {"Z8", 4}};
    for (const auto& [lit, count] : known) {
        const auto g = FiniteAbelianGroup::parse(lit);
        EXPECT_EQ(brute_force_aut_count(g), count) << lit;
        EXPECT_EQ(static_cast<long long>(enumerate_automorphisms(g).size()), count) << lit;
    }
}

TEST(Automorphisms, Z2FourthHasOrderOfGL4F2) {
    const auto g = FiniteAbelianGroup::parse("Z2xZ2xZ2xZ2");
    EXPECT_EQ(brute_force_aut_count(g), 20160);
    EXPECT_EQ(enumerate_automorphisms(g).size(), 20160u);
}

TEST(Automorphisms, SizeLimit) {
    EXPECT_THROW(enumerate_automorphisms(FiniteAbelianGroup::parse("Z2xZ2xZ2xZ2"), 8), SizeLimitError);
}

TEST(Automorphisms, FormAGroup) {
    const auto g = FiniteAbelianGroup::parse("Z2xZ4");
    const auto auts = enumerate_automorphisms(g);
    const std::set<GroupAutomorphism> all(auts.begin(), auts.end());
    EXPECT_TRUE(all.count(GroupAutomorphism::identity(g)));
    for (const auto& a : auts) {
        EXPECT_TRUE(all.count(a.inverse(g)));
        EXPECT_TRUE(a.compose(g, a.inverse(g)).is_identity(g));
        for (const auto& b : auts) EXPECT_TRUE(all.count(a.compose(g, b)));
        for (const auto& x : g.elements())
            for (const auto& y : g.elements()) EXPECT_EQ(a.apply(g, g.add(x, y)), g.add(a.apply(g, x), a.apply(g, y)));
    }
    EXPECT_FALSE(is_automorphism(g, {g.make_class({1, 0}), g.make_class({1, 0})}));
    EXPECT_FALSE(is_automorphism(g, {g.make_class({0, 1}), g.make_class({0, 1})}));
}

TEST(Quotient, ByClassMatchesBruteForceCosets) {
    std::mt19937 rng(7);
    for (const auto* lit : {"Z2xZ4", "Z2xZ2xZ2", "Z3xZ3", "Z2xZ8", "Z4xZ4"}) {
        const auto g = FiniteAbelianGroup::parse(lit);
        for (const auto& c : g.elements()) {
            const auto q = quotient_by(g, c);
            EXPECT_EQ(q.target.order() * g.class_order(c), g.order()) << lit << " " << c.to_string();
            // kernel is exactly <c>
            std::set<GroupClass> sub;
            for (int k = 0; k < g.class_order(c); ++k) sub.insert(g.scale(c, k));
            for (const auto& x : g.elements()) {
                EXPECT_EQ(q.project(g, x).is_zero(), sub.count(x) == 1);
                const auto y = g.class_at(rng() % static_cast<std::size_t>(g.order()));
                EXPECT_EQ(q.project(g, g.add(x, y)), q.target.add(q.project(g, x), q.project(g, y)));
            }
            // lifts map to the target generators
            for (int j = 0; j < q.target.rank(); ++j)
                EXPECT_EQ(q.project(g, q.lifts[static_cast<std::size_t>(j)]), q.target.generator(j));
        }
    }
}

TEST(Quotient, ShapesOfSmallQuotients) {
    const auto g = FiniteAbelianGroup::parse("Z2xZ4");
    EXPECT_EQ(quotient_by(g, g.make_class({0, 2})).target.to_string(), "Z2xZ2");
    EXPECT_EQ(quotient_by(g, g.make_class({1, 2})).target.to_string(), "Z4");
    EXPECT_EQ(quotient_by(g, g.make_class({0, 1})).target.to_string(), "Z2");
    EXPECT_EQ(quotient_by(g, g.zero()).target, g);
}

TEST(NumberTheory, Helpers) {
    EXPECT_EQ(mod_floor(-1, 4), 3);
    EXPECT_EQ(mod_floor(9, 4), 1);
    EXPECT_EQ(gcd64(12, 18), 6);
    EXPECT_EQ(lcm64(4, 6), 12);
    EXPECT_EQ(mod_inverse(3, 8), 3);
    EXPECT_EQ(mod_inverse(-3, 8), 5);
    EXPECT_THROW(mod_inverse(2, 8), std::domain_error);
}

TEST(SmithNormalForm, DiagonalDividesAndVInverts) {
    const auto sf = smith_normal_form({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, 3);
    EXPECT_EQ(sf.diagonal, (std::vector<std::int64_t>{2, 6, 12}));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < 3; ++k) s += sf.v[i][k] * sf.v_inverse[k][j];
            EXPECT_EQ(s, i == j ? 1 : 0);
        }
}
