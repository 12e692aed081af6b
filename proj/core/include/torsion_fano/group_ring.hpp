#pragma once

#include "torsion_fano/abelian_group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tfano {


// Element of Z[G], dense over the lexicographic element order of G.
class GroupRingElement {
public:
    GroupRingElement() = default;
    explicit GroupRingElement(FiniteAbelianGroup g);

    static GroupRingElement zero(const FiniteAbelianGroup& g) { return GroupRingElement(g); }
    static GroupRingElement one(const FiniteAbelianGroup& g) { return delta(g, g.zero()); }
    static GroupRingElement delta(const FiniteAbelianGroup& g, const GroupClass& c, std::int64_t coeff = 1);

    const FiniteAbelianGroup& group() const noexcept { return group_; }
    const std::vector<std::int64_t>& dense() const noexcept { return coeffs_; }

    std::int64_t coefficient(const GroupClass& c) const;
    void add_to(const GroupClass& c, std::int64_t v);
    std::int64_t augmentation() const;
    bool is_zero() const;

    GroupRingElement& operator+=(const GroupRingElement& o);
    GroupRingElement& operator-=(const GroupRingElement& o);
    GroupRingElement& operator*=(std::int64_t k);
    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator*(GroupRingElement a, std::int64_t k) { return a *= k; }
    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
    GroupRingElement operator-() const { return *this * -1; }

    GroupRingElement apply(const GroupAutomorphism& phi) const;

    // "3 + 2[(0,1)] - [(1,1)]"
    std::string to_string() const;

    bool operator==(const GroupRingElement& o) const;

private:
    void require_same(const GroupRingElement& o) const;
    FiniteAbelianGroup group_;
    std::vector<std::int64_t> coeffs_ = {0};
};

} // namespace tfano
