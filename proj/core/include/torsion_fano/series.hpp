#pragma once

#include "torsion_fano/group_ring.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tfano {

// sum_n H_n t^n with H_n in Z[G], known up to t^order()
struct GradedSeries {
    FiniteAbelianGroup group;
    std::vector<GroupRingElement> coeffs;

    GradedSeries() = default;
    GradedSeries(FiniteAbelianGroup g, int order);

    int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    const GroupRingElement& at(int n) const { return coeffs.at(static_cast<std::size_t>(n)); }
    GroupRingElement& at(int n) { return coeffs.at(static_cast<std::size_t>(n)); }
    // image under the augmentation Z[G] -> Z
    std::vector<std::int64_t> augmented() const;
    // coefficient sequence of one class
    std::vector<std::int64_t> component(const GroupClass& c) const;
    GradedSeries truncated(int order) const;

    bool operator==(const GradedSeries& o) const { return group == o.group && coeffs == o.coeffs; }
};

// polynomial in t with Z[G] coefficients
struct GroupRingPolynomial {
    FiniteAbelianGroup group;
    std::vector<GroupRingElement> coeffs;

    GroupRingPolynomial() = default;
    explicit GroupRingPolynomial(FiniteAbelianGroup g) : group(std::move(g)) {}
    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    GroupRingElement coefficient(int n) const;
    void add_term(int n, const GroupRingElement& c);
    void trim();
    bool operator==(const GroupRingPolynomial& o) const { return group == o.group && coeffs == o.coeffs; }
};

// the factor (1 - [cls] t^weight)
struct DenominatorFactor {
    GroupClass cls;
    int weight = 1;
    auto operator<=>(const DenominatorFactor& o) const {
        if (auto c = weight <=> o.weight; c != 0) return c;
        return cls <=> o.cls;
    }
    bool operator==(const DenominatorFactor&) const = default;
};

struct RationalPresentation {
    GroupRingPolynomial numerator;
    std::vector<DenominatorFactor> denominator;
};

GradedSeries expand(const RationalPresentation& rp, int order);

// numerator = series * prod(1 - [c] t^w), which must vanish above degree_bound.
// Throws NotAMatchError if the series is too short or the tail is nonzero.
GroupRingPolynomial recover_numerator(const GradedSeries& s, const std::vector<DenominatorFactor>& factors,
                                      int degree_bound);

struct RelationCount {
    int degree = 0;
    GroupClass cls;
    std::int64_t count = 0;   // how many more monomials the free ring has
    bool operator==(const RelationCount&) const = default;
};

struct GeneratorInference {
    std::vector<DenominatorFactor> generators;   // sorted, with repeats
    std::vector<RelationCount> relations;        // negative deficits seen
};

// Greedy minimal generation against the free ring on the generators found
// so far. max_degree < 0 means the whole series.
GeneratorInference infer_generators(const GradedSeries& s, int max_degree = -1);

// e1^a e2^b ... for a class, "1" for zero
std::string class_monomial(const GroupClass& c);
// "1 + 7t + 25t^2 + ..." for an integer sequence
std::string format_integer_series(const std::vector<std::int64_t>& a, bool with_tail = true);
// one line per degree, classes in monomial notation
std::string format_series(const GradedSeries& s);
// numerator grouped by class, the way closed forms are usually printed
std::string format_numerator(const GroupRingPolynomial& p);
std::string format_denominator(const std::vector<DenominatorFactor>& f);

} // namespace tfano
