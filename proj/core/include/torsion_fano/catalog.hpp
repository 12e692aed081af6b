#pragma once

#include "torsion_fano/basket.hpp"
#include "torsion_fano/cyclic_table.hpp"
#include "torsion_fano/molien.hpp"
#include "torsion_fano/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tfano {

// A torsion basket as printed, after typo normalization.
struct BasketRecord {
    std::string name;
    std::string source;
    Basket basket;
    std::vector<std::string> printed_as;   // one line per normalized entry
    std::string printed_label;              // when the printed name differs
    std::string note;
    bool operator==(const BasketRecord&) const = default;
};

// Shape of one equation space as printed next to an action.
struct EquationShape {
    GroupClass character;
    std::vector<std::string> monomials;    // "x0^2", "x1x2"
    std::string printed_as;
    std::string note;
    bool operator==(const EquationShape&) const = default;
};

struct QuotientRecord {
    std::string name;
    std::string heading;
    std::string cover;                     // CoverModel name
    FiniteAbelianGroup group;
    std::vector<std::string> printed_action;
    std::vector<GroupClass> coordinate_characters;
    std::vector<GroupClass> equation_characters;
    std::string torsion_basket;            // BasketRecord name
    std::vector<SingularityGerm> residual; // points where every torsion class is Cartier
    Rational degree{0};
    std::string printed_as;
    std::vector<GroupClass> printed_coordinate_characters;
    std::vector<EquationShape> equation_shapes;
    bool operator==(const QuotientRecord&) const = default;
};

class Catalog {
public:
    // dir holds covers.json, baskets.json, records.json, cyclic_table.json
    static Catalog load(const std::string& dir);
    static Catalog from_json(const std::string& covers, const std::string& baskets, const std::string& records,
                             const std::string& table);

    std::string covers_json() const;
    std::string baskets_json() const;
    std::string records_json() const;

    const std::vector<CoverModel>& covers() const noexcept { return covers_; }
    const std::vector<BasketRecord>& baskets() const noexcept { return baskets_; }
    const std::vector<QuotientRecord>& records() const noexcept { return records_; }
    const CyclicBasketTable& table() const noexcept { return table_; }
    CyclicBasketTable& table() noexcept { return table_; }

    // all throw CatalogError for unknown names
    const CoverModel& cover(const std::string& name) const;
    const BasketRecord& basket(const std::string& name) const;
    // exact name, or the unique record whose name starts with "key-"
    const QuotientRecord& record(const std::string& key) const;
    bool has_record(const std::string& key) const;
    bool has_cover(const std::string& name) const;

    // catalog baskets over g (canonical form of g's invariant factors), in file order
    std::vector<const BasketRecord*> baskets_for(const FiniteAbelianGroup& g) const;

    // claimed quotient basket of a record: torsion points plus residual
    Basket claimed_basket(const QuotientRecord& r) const;

    bool operator==(const Catalog&) const = default;

private:
    void check_integrity() const;
    std::vector<CoverModel> covers_;
    std::vector<BasketRecord> baskets_;
    std::vector<QuotientRecord> records_;
    CyclicBasketTable table_;
};

// TORSION_FANO_DATA if set, else the source tree data/, else the install prefix
std::string default_data_dir();

Rational parse_rational(const std::string& s);   // "1/2", "3"; throws CatalogError

// "x0^2x3" style monomial from an exponent vector
std::string monomial_string(const std::vector<int>& exps);

} // namespace tfano
