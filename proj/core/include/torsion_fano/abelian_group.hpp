#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace tfano {

// Exponent vector of a class in Z/r_1 x ... x Z/r_k. Carries no group;
// FiniteAbelianGroup validates and reduces.
class GroupClass {
public:
    GroupClass() = default;
    explicit GroupClass(std::vector<int> exps) : exps_(std::move(exps)) {}

    const std::vector<int>& exponents() const noexcept { return exps_; }
    std::size_t size() const noexcept { return exps_.size(); }
    int operator[](std::size_t i) const { return exps_[i]; }
    bool is_zero() const noexcept;

    std::string to_string() const;   // "(1,2)"

    auto operator<=>(const GroupClass&) const = default;

private:
    std::vector<int> exps_;
};

// exp(2*pi*i * exponent / modulus), exponent normalized to [0, modulus)
struct RootOfUnity {
    std::int64_t exponent = 0;
    std::int64_t modulus = 1;
    auto operator<=>(const RootOfUnity&) const = default;
};

class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;  // trivial group

    // Any list of cyclic orders; normalized to invariant factors
    // r_1 | r_2 | ... with trivial factors dropped.
    static FiniteAbelianGroup from_factors(const std::vector<int>& orders);
    static FiniteAbelianGroup cyclic(int n) { return from_factors({n}); }
    // "Z2xZ4", "z2 x z2 x z2", "Z1" (trivial). Throws MalformedClassError.
    static FiniteAbelianGroup parse(std::string_view literal);

    const std::vector<int>& factor_orders() const noexcept { return orders_; }
    int rank() const noexcept { return static_cast<int>(orders_.size()); }
    std::int64_t order() const noexcept;
    int exponent() const noexcept { return orders_.empty() ? 1 : orders_.back(); }
    bool is_trivial() const noexcept { return orders_.empty(); }
    std::string to_string() const;

    GroupClass zero() const;
    GroupClass generator(int i) const;
    // reduces exponents mod r_i; throws MalformedClassError on length mismatch
    GroupClass make_class(const std::vector<int>& exps) const;
    // throws MalformedClassError unless c has rank() entries in range
    void validate(const GroupClass& c) const;

    GroupClass add(const GroupClass& a, const GroupClass& b) const;
    GroupClass negate(const GroupClass& a) const;
    GroupClass scale(const GroupClass& a, std::int64_t k) const;
    int class_order(const GroupClass& c) const;

    // lexicographic, zero first
    std::vector<GroupClass> elements() const;
    std::size_t index_of(const GroupClass& c) const;
    GroupClass class_at(std::size_t index) const;

    auto operator<=>(const FiniteAbelianGroup&) const = default;

private:
    explicit FiniteAbelianGroup(std::vector<int> invariant) : orders_(std::move(invariant)) {}
    std::vector<int> orders_;
};

int class_order(const FiniteAbelianGroup& g, const GroupClass& c);

// Characters are identified with classes of the same group via
// <chi, c> = exp(2 pi i sum_j chi_j c_j / r_j).
class Character {
public:
    Character() = default;
    explicit Character(std::vector<int> values) : values_(std::move(values)) {}
    const std::vector<int>& values() const noexcept { return values_; }
    GroupClass as_class() const { return GroupClass(values_); }
    auto operator<=>(const Character&) const = default;
private:
    std::vector<int> values_;
};

// Value as exponent over the group exponent N. Throws GroupMismatchError
// when chi or c do not fit g.
RootOfUnity character_pairing(const FiniteAbelianGroup& g, const Character& chi, const GroupClass& c);
// same pairing, two classes
std::int64_t pairing_exponent(const FiniteAbelianGroup& g, const GroupClass& a, const GroupClass& b);

class GroupAutomorphism {
public:
    GroupAutomorphism() = default;
    explicit GroupAutomorphism(std::vector<GroupClass> images) : images_(std::move(images)) {}

    const std::vector<GroupClass>& images() const noexcept { return images_; }
    GroupClass apply(const FiniteAbelianGroup& g, const GroupClass& c) const;
    // (this o other)(c) = this(other(c))
    GroupAutomorphism compose(const FiniteAbelianGroup& g, const GroupAutomorphism& other) const;
    GroupAutomorphism inverse(const FiniteAbelianGroup& g) const;
    bool is_identity(const FiniteAbelianGroup& g) const;

    static GroupAutomorphism identity(const FiniteAbelianGroup& g);
    auto operator<=>(const GroupAutomorphism&) const = default;

private:
    std::vector<GroupClass> images_;
};

// True when the images define a bijective homomorphism.
bool is_automorphism(const FiniteAbelianGroup& g, const std::vector<GroupClass>& images);

// All automorphisms in lexicographic order of image tuples.
// Throws SizeLimitError when |G| > bound.
std::vector<GroupAutomorphism> enumerate_automorphisms(const FiniteAbelianGroup& g, std::int64_t bound = 256);

// G / <c> with the induced map. Built from a Smith normal form.
struct QuotientMap {
    FiniteAbelianGroup target;
    std::vector<GroupClass> generator_images;  // image of e_i of the source
    std::vector<GroupClass> lifts;             // lift of each target generator
    GroupClass project(const FiniteAbelianGroup& source, const GroupClass& c) const;
};
QuotientMap quotient_by(const FiniteAbelianGroup& g, const GroupClass& c);

// Smith normal form of an integer matrix: returns diagonal d and V, Vinv with
// U*A*V = diag(d). Rows of A are relations.
struct SmithForm {
    std::vector<std::int64_t> diagonal;
    std::vector<std::vector<std::int64_t>> v;
    std::vector<std::vector<std::int64_t>> v_inverse;
};
SmithForm smith_normal_form(std::vector<std::vector<std::int64_t>> a, std::size_t columns);

std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
// inverse of a mod m; throws std::domain_error if not a unit
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

} // namespace tfano
