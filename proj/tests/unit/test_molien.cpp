#include <gtest/gtest.h>

#include "torsion_fano/catalog.hpp"
#include "torsion_fano/errors.hpp"
#include "torsion_fano/molien.hpp"
#include "torsion_fano/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace tfano;

namespace {

const Catalog& catalog() {
    static const Catalog cat = Catalog::load(TFANO_TEST_DATA_DIR);
    return cat;
}

// Counts monomials by (degree, character) in the free ring, then multiplies
// by prod (1 - [eta_j] t^{d_j}) coefficient by coefficient.
GradedSeries brute_force_series(const CoverModel& y, const DiagonalAction& act, int order) {
    const auto& g = act.group;
    GradedSeries free_ring(g, order);
    const std::size_t n = y.weights.size();
    std::vector<int> e(n, 0);
    std::function<void(std::size_t, int, GroupClass)> rec = [&](std::size_t i, int deg, GroupClass c) {
        if (i == n) {
            free_ring.at(deg).add_to(c, 1);
            return;
        }
        for (int k = 0; deg + k * y.weights[i] <= order; ++k)
            rec(i + 1, deg + k * y.weights[i], g.add(c, g.scale(act.coordinate_characters[i], k)));
    };
    rec(0, 0, g.zero());
    GradedSeries s = free_ring;
    for (std::size_t j = 0; j < y.equation_degrees.size(); ++j) {
        GradedSeries next = s;
        const int d = y.equation_degrees[j];
        for (int m = d; m <= order; ++m)
            for (const auto& c : g.elements()) {
                const auto v = s.at(m - d).coefficient(c);
                if (v) next.at(m).add_to(g.add(c, act.equation_characters[j]), -v);
            }
        s = next;
    }
    return s;
}

DiagonalAction random_action(const CoverModel& y, const FiniteAbelianGroup& g, std::mt19937& rng) {
    DiagonalAction a{g, {}, {}};
    auto pick = [&] { return g.class_at(rng() % static_cast<std::size_t>(g.order())); };
    for (std::size_t i = 0; i < y.weights.size(); ++i) a.coordinate_characters.push_back(pick());
    for (std::size_t j = 0; j < y.equation_degrees.size(); ++j) a.equation_characters.push_back(pick());
    return a;
}


} // namespace

TEST(CoverModel, DegreesAndIndices) {
    const auto& y222 = catalog().cover("Y222");
    EXPECT_EQ(y222.fano_index(), 1);
    EXPECT_EQ(y222.dimension(), 3);
    EXPECT_EQ(y222.degree(), Rational(8));
    const auto& y44 = catalog().cover("Y44");
    EXPECT_EQ(y44.degree(), Rational(2));
    CoverModel bad = y222;
    bad.equation_degrees.push_back(2);
    EXPECT_THROW(bad.validate(), CatalogError);
}

TEST(Molien, TrivialGroupIsTheCompleteIntersectionSeries) {
    const auto& y = catalog().cover("Y222");
    const DiagonalAction triv{FiniteAbelianGroup(), std::vector<GroupClass>(7, GroupClass()), std::vector<GroupClass>(3, GroupClass())};
    EXPECT_EQ(molien_series(y, triv, 5).augmented(), (std::vector<std::int64_t>{1, 7, 25, 63, 129, 231}));
}

TEST(Molien, AgreesWithMonomialCountRandomized) {
    std::mt19937 rng(5);
    for (const auto* cover : {"Y222", "Y44"})
        for (const auto* lit : {"Z2xZ2", "Z2xZ4", "Z3xZ3", "Z2xZ2xZ2"}) {
            const auto& y = catalog().cover(cover);
            const auto g = FiniteAbelianGroup::parse(lit);
            for (int trial = 0; trial < 4; ++trial) {
                const auto act = random_action(y, g, rng);
                const auto expect = brute_force_series(y, act, 8);
                EXPECT_EQ(molien_series(y, act, 8), expect) << cover << " " << lit;
                EXPECT_EQ(group_ring_series(y, act, 8), expect) << cover << " " << lit;
            }
        }
}

TEST(Molien, RecordActionsAgreeWithGroupRingSeries) {
    for (const auto& r : catalog().records()) {
        const auto& y = catalog().cover(r.cover);
        const auto act = canonical_lift(y, record_action(r));
        EXPECT_EQ(molien_series(y, act, 10), group_ring_series(y, act, 10)) << r.name;
    }
}

TEST(Molien, AugmentationForgetsTheAction) {
    const auto& y = catalog().cover("Y222");
    const DiagonalAction triv{FiniteAbelianGroup(), std::vector<GroupClass>(7, GroupClass()), std::vector<GroupClass>(3, GroupClass())};
    for (const auto& r : catalog().records()) {
        if (r.cover != "Y222") continue;
        EXPECT_EQ(molien_series(y, record_action(r), 9).augmented(), molien_series(y, triv, 9).augmented()) << r.name;
    }
}

TEST(Molien, CoordinatePermutationInvariance) {
    const auto& r = catalog().record("no1c");
    const auto& y = catalog().cover(r.cover);
    const auto act = record_action(r);
    std::vector<std::size_t> perm(y.weights.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937 rng(3);
    std::shuffle(perm.begin(), perm.end(), rng);
    CoverModel y2 = y;
    DiagonalAction a2 = act;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        y2.weights[i] = y.weights[perm[i]];
        a2.coordinate_characters[i] = act.coordinate_characters[perm[i]];
    }
    EXPECT_EQ(molien_series(y2, a2, 8), molien_series(y, act, 8));
}

TEST(CanonicalLift, UntwistsTheCanonicalClass) {
    for (const auto& r : catalog().records()) {
        const auto& y = catalog().cover(r.cover);
        const auto lifted = canonical_lift(y, record_action(r));
        const auto& g = lifted.group;
        GroupClass s = g.zero();
        for (const auto& c : lifted.coordinate_characters) s = g.add(s, c);
        for (const auto& c : lifted.equation_characters) s = g.add(s, g.negate(c));
        EXPECT_TRUE(s.is_zero()) << r.name;
        EXPECT_EQ(canonical_lift(y, lifted).coordinate_characters, lifted.coordinate_characters);
    }
}

TEST(CanonicalLift, FailsWhenTheIndexKillsTheShift) {
    // cubic threefold: index 2, so over Z/2 + Z/2 no shift helps
    CoverModel y{"X3", {1, 1, 1, 1, 1}, {3}, Basket()};
    const auto g = FiniteAbelianGroup::parse("Z2xZ2");
    DiagonalAction act{g, std::vector<GroupClass>(5, g.zero()), {g.zero()}};
    act.coordinate_characters[0] = g.make_class({1, 0});
    EXPECT_THROW(canonical_lift(y, act), CharacterInconsistencyError);
    act.coordinate_characters.pop_back();
    EXPECT_THROW(molien_series(y, act, 3), CharacterInconsistencyError);
}

TEST(EquationSpaces, WorkedExampleHasFiveMonomialsPerEquation) {
    const auto& r = catalog().record("ex3");
    const auto& y = catalog().cover(r.cover);
    const auto act = record_action(r);
    for (int j = 0; j < 3; ++j) {
        const auto sp = invariant_equation_space(y, act, j);
        EXPECT_EQ(sp.dimension(), 5u) << j;
        EXPECT_EQ(sp.degree, 2);
        for (const auto& shape : r.equation_shapes) {
            if (shape.character != sp.character) continue;
            std::set<std::string> have, want(shape.monomials.begin(), shape.monomials.end());
            for (const auto& m : sp.monomials) have.insert(monomial_string(m));
            EXPECT_EQ(have, want);
        }
    }
    EXPECT_EQ(r.equation_shapes.size(), 2u);
}

TEST(EquationSpaces, NonemptyForEveryRecord) {
    for (const auto& r : catalog().records()) {
        const auto& y = catalog().cover(r.cover);
        for (int j = 0; j < static_cast<int>(y.equation_degrees.size()); ++j)
            EXPECT_GT(invariant_equation_space(y, record_action(r), j).dimension(), 0u) << r.name;
    }
}

TEST(EquationSpaces, EmptySystemThrows) {
    const auto& y = catalog().cover("Y222");
    const auto g = FiniteAbelianGroup::parse("Z2");
    // quadrics in x_i with all characters equal are invariant
    DiagonalAction act{g, std::vector<GroupClass>(7, g.make_class({1})), std::vector<GroupClass>(3, g.make_class({1}))};
    EXPECT_THROW(invariant_equation_space(y, act, 0), EmptyLinearSystemError);
    EXPECT_THROW(invariant_equation_space(y, act, 5), std::out_of_range);
}

TEST(FixedLocus, FreeInvolutionsOfTheThreeQuadrics) {
    const auto& r = catalog().record("no1a");
    const auto& y = catalog().cover(r.cover);
    const auto fl = fixed_locus_analysis(y, canonical_lift(y, record_action(r)));
    EXPECT_TRUE(fl.isolated());
    long long total = 0;
    for (const auto& e : fl.elements) {
        if (e.element.is_zero()) continue;
        EXPECT_FALSE(e.positive_dimensional);
        EXPECT_EQ(e.fixed_points, 8) << e.element.to_string();
        total += e.fixed_points;
    }
    EXPECT_EQ(total, 24);
    long long quotient_points = 0;
    for (const auto& t : fl.types) quotient_points += t.quotient_points;
    EXPECT_EQ(quotient_points, 12);
    EXPECT_EQ(canonicalize(fl.predicted), canonicalize(catalog().claimed_basket(r)));
}

TEST(FixedLocus, PredictsTheClaimedBasketForEveryRecord) {
    for (const auto& r : catalog().records()) {
        const auto& y = catalog().cover(r.cover);
        const auto fl = fixed_locus_analysis(y, canonical_lift(y, record_action(r)));
        EXPECT_TRUE(fl.isolated()) << r.name;
        EXPECT_EQ(canonicalize(fl.predicted), canonicalize(catalog().claimed_basket(r))) << r.name;
    }
}
