#pragma once

#include "torsion_fano/abelian_group.hpp"
#include "torsion_fano/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace tfano {

// Terminal cyclic quotient germ 1/r(1,a,-a), stored with a = min(a, r-a).
class SingularityGerm {
public:
    SingularityGerm() = default;
    // throws InvalidGermError unless r >= 2 and gcd(a, r) = 1
    SingularityGerm(int index, int weight);

    int index() const noexcept { return r_; }
    int weight() const noexcept { return a_; }
    std::string to_string() const;   // "1/8(1,3,5)"

    auto operator<=>(const SingularityGerm&) const = default;

private:
    int r_ = 2;
    int a_ = 1;
};

// A germ together with the restriction phi_Q : G -> Z/r of the torsion,
// given on the generators of G.
struct LabeledSingularity {
    SingularityGerm germ;
    std::vector<int> labels;

    std::string to_string() const;  // "1/4(1,1,3)_(2,1)"
    auto operator<=>(const LabeledSingularity&) const = default;
};

class Basket {
public:
    Basket() = default;
    // entries are validated against g and sorted
    Basket(FiniteAbelianGroup g, std::vector<LabeledSingularity> entries);

    const FiniteAbelianGroup& group() const noexcept { return group_; }
    const std::vector<LabeledSingularity>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    // sum over points of (r - 1/r)
    Rational mass() const;
    std::string to_string() const;

    bool operator==(const Basket&) const = default;
    auto operator<=>(const Basket&) const = default;

private:
    FiniteAbelianGroup group_;
    std::vector<LabeledSingularity> entries_;
};

// throws InvalidGermError for labels that do not define a homomorphism
void validate_entry(const FiniteAbelianGroup& g, const LabeledSingularity& q);

// phi_Q(c) = sum_i c_i l_i mod r
int label_at(const FiniteAbelianGroup& g, const LabeledSingularity& q, const GroupClass& c);

// Basket over Z/ord(c). Entries whose label becomes 0 are kept.
// Throws InvalidClassError for c = 0.
Basket restrict_to_class(const Basket& b, const GroupClass& c);
// Bt(c): restriction with the zero-labelled entries dropped
Basket torsion_part(const Basket& b, const GroupClass& c);
// entries of b with every label zero
std::vector<LabeledSingularity> residual_part(const Basket& b);

// Entries of b (with full labels) seen by c1 but not by c2.
std::vector<LabeledSingularity> difference_set(const Basket& b, const GroupClass& c1, const GroupClass& c2);

// Relabel by phi: new labels are phi_Q o phi.
Basket apply_automorphism(const Basket& b, const GroupAutomorphism& phi);

// Lexicographically least sorted entry list over the Aut(G)-orbit.
Basket canonicalize(const Basket& b, std::int64_t bound = 256);

// Automorphisms cached per group (thread safe).
const std::vector<GroupAutomorphism>& cached_automorphisms(const FiniteAbelianGroup& g, std::int64_t bound = 256);

// Basket of the cyclic cover Y -> X defined by the class c, over G/<c>.
Basket cover_basket(const Basket& b, const GroupClass& c);
// Iterated cyclic covers by all generators; result is over the trivial group.
Basket cover_by_group(const Basket& b);

// copies x D over the same group
Basket replicate(const Basket& d, int copies);

} // namespace tfano
