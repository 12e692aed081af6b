#pragma once

#include "torsion_fano/basket.hpp"
#include "torsion_fano/rational.hpp"
#include "torsion_fano/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tfano {

// Quasi-smooth Fano 3-fold complete intersection Y in P(w_0..w_n).
struct CoverModel {
    std::string name;
    std::vector<int> weights;
    std::vector<int> equation_degrees;
    Basket basket;   // over the trivial group

    int fano_index() const;                 // sum w - sum d
    int dimension() const;                  // n - #equations
    Rational degree() const;                // prod d / prod w * index^3
    void validate() const;                  // throws CatalogError
    bool operator==(const CoverModel&) const = default;
};

// G acting diagonally: x_i -> chi_i(g) x_i, equation j semi-invariant of
// character eta_j. Characters are written as classes of G.
struct DiagonalAction {
    FiniteAbelianGroup group;
    std::vector<GroupClass> coordinate_characters;
    std::vector<GroupClass> equation_characters;
};

// Lift with sum chi_i - sum eta_j = 0, so that -K of the quotient is O(1)
// with trivial character. Throws CharacterInconsistencyError if the shift
// by psi^{w_i} cannot reach it.
DiagonalAction canonical_lift(const CoverModel& y, const DiagonalAction& act);

// Coefficient of [c] t^n counts monomials of degree n and character c
// modulo the equations. Computed as a character average over G with exact
// cyclotomic arithmetic.
GradedSeries molien_series(const CoverModel& y, const DiagonalAction& act, int order);

// Same series straight from the group ring:
// prod_j (1 - [eta_j] t^{d_j}) / prod_i (1 - [chi_i] t^{w_i}).
GradedSeries group_ring_series(const CoverModel& y, const DiagonalAction& act, int order);

struct EquationSpace {
    int degree = 0;
    GroupClass character;
    std::vector<std::vector<int>> monomials;   // exponent vectors
    std::size_t dimension() const { return monomials.size(); }
};

// Monomials of the equation's degree and character; throws
// EmptyLinearSystemError if there are none.
EquationSpace invariant_equation_space(const CoverModel& y, const DiagonalAction& act, int equation);

// Points of Y with exactly the coordinate support `support` (a 0-dim
// stratum), their common stabilizer in G x C*, and the quotient germ.
struct FixedPointType {
    std::vector<int> support;
    long long cover_points = 0;
    int stabilizer_order = 1;         // |Gamma|, Gamma inside G x C*
    int group_stabilizer_order = 1;   // image of Gamma in G
    long long quotient_points = 0;
    std::optional<SingularityGerm> germ;
    std::vector<int> labels;          // on the generators of G
    std::string problem;              // non-cyclic, non-terminal, non-integral count
};

struct ElementFixedLocus {
    GroupClass element;
    long long fixed_points = 0;
    bool positive_dimensional = false;
    std::vector<std::vector<int>> strata;   // eigen-strata of coordinates
};

struct FixedLocusReport {
    std::vector<FixedPointType> types;
    std::vector<ElementFixedLocus> elements;
    Basket predicted;                  // quotient basket, torsion and residual points
    std::vector<std::string> warnings;
    bool isolated() const { return warnings.empty(); }
};

// Weighted Bezout on coordinate strata of a general member. Assumes the
// action is the canonical lift.
FixedLocusReport fixed_locus_analysis(const CoverModel& y, const DiagonalAction& act);

} // namespace tfano
