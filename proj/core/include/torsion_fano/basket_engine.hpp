#pragma once

#include "torsion_fano/basket.hpp"
#include "torsion_fano/cyclic_table.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tfano {

struct EnumerationOptions {
    unsigned threads = 1;
    // take candidates beyond the listed entries from the box envelopes
    bool use_envelopes = true;
};

struct EnumerationStats {
    std::uint64_t candidates = 0;          // partial label tables built
    std::uint64_t pruned = 0;              // rejected by a cyclic restriction
    std::uint64_t replicate_rejected = 0;  // complete tables failing the replicate test
    std::uint64_t leaves = 0;              // complete tables accepted
};

struct UndecidableBasket {
    Basket basket;
    std::string reason;
    bool operator==(const UndecidableBasket&) const = default;
};

struct EnumerationResult {
    FiniteAbelianGroup group;
    std::vector<Basket> baskets;                  // canonical, sorted, decided
    std::vector<UndecidableBasket> undecidable;   // canonical, sorted, not in baskets
    EnumerationStats stats;
};

// All torsion baskets of G up to Aut(G). Undecidable branches (those that
// rely on open boxes or cited-only slots) are reported separately.
EnumerationResult enumerate_baskets(const FiniteAbelianGroup& g, const CyclicBasketTable& table,
                                    const EnumerationOptions& opts = {});

struct ConstraintViolation {
    std::string rule;     // "label", "group-order", "closure", "replicate"
    std::string detail;
    std::optional<GroupClass> witness;
};

struct PairConstraintReport {
    std::vector<ConstraintViolation> violations;
    std::vector<ConstraintViolation> undecidable;
    Rational orbifold_mass{0};
    bool kc2_positive = true;   // 24 - mass > 0; reported, not enforced
    bool admissible() const { return violations.empty() && undecidable.empty(); }
    std::string verdict() const;   // "admissible", "inadmissible", "undecidable"
};

PairConstraintReport check_basket(const FiniteAbelianGroup& g, const std::vector<LabeledSingularity>& entries,
                                  const CyclicBasketTable& table);
PairConstraintReport check_basket(const Basket& b, const CyclicBasketTable& table);

// Rules on invariant factors alone: r prime, every factor a power of r,
// and r_2 = r for three or more generators. Returns the failed rule.
std::optional<std::string> order_rule_violation(const std::vector<int>& orders);

struct OrderVerdict {
    std::vector<int> orders;
    std::string status;    // "admissible", "excluded", "undecidable"
    std::string reason;
    std::size_t baskets = 0;
};

struct OrderReport {
    std::vector<std::vector<int>> admissible;
    std::vector<std::vector<int>> undecidable;
    std::vector<OrderVerdict> details;
};

struct AdmissibleOrderOptions {
    bool run_enumeration = true;
    EnumerationOptions enumeration;
    std::int64_t max_group_order = 256;
};

// Invariant-factor tuples with `generators` factors, each <= max_order.
OrderReport admissible_orders(int generators, int max_order, const CyclicBasketTable& table,
                              const AdmissibleOrderOptions& opts = {});

} // namespace tfano
