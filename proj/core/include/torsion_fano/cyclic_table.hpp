#pragma once

#include "torsion_fano/basket.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tfano {

enum class Membership { Member, NotMember, Unknown };
const char* to_string(Membership m);

enum class EntrySource { Reconstructed, CitedOnly };

// Coarse shape of a basket known only by name: at least `count` points of
// index `r` for every (r, count).
struct EntryShape {
    std::map<int, int> min_index_count;
    bool admits(const Basket& x) const;
    bool operator==(const EntryShape&) const = default;
};

struct TableEntry {
    std::string name;
    EntrySource source = EntrySource::Reconstructed;
    std::optional<Basket> basket;            // canonical, over Z/n; torsion points only
    std::optional<EntryShape> shape;         // cited-only entries
    std::vector<std::string> derived_from;   // "Bt2,4.1 @ (0,1)"
    std::string printed_as;
    std::string note;
    std::string identified_as;               // set by reconcile()
    bool operator==(const TableEntry&) const = default;
};

struct TableBox {
    int order = 0;
    bool closed = false;
    std::vector<TableEntry> entries;
    bool operator==(const TableBox&) const = default;
};

// Cited-only slots bound during one search branch (slot name -> basket).
struct SlotState {
    std::map<std::string, Basket> bound;
};

struct MembershipResult {
    Membership verdict = Membership::NotMember;
    std::string reason;   // matched entry, bound slot, or failed condition
};

class CyclicBasketTable {
public:
    CyclicBasketTable() = default;
    CyclicBasketTable(const CyclicBasketTable& o);
    CyclicBasketTable& operator=(const CyclicBasketTable& o);

    static CyclicBasketTable from_json(const std::string& text);
    static CyclicBasketTable load(const std::string& path);
    std::string to_json() const;

    // Binds unnamed reconstructed entries to the single cited-only slot
    // whose shape admits them. Run by from_json.
    void reconcile();

    void add_box(TableBox box);
    bool has_box(int n) const { return boxes_.count(n) != 0; }
    const TableBox& box(int n) const;
    std::vector<int> box_orders() const;
    const std::vector<int>& supported_indices() const noexcept { return supported_; }
    void set_supported_indices(std::vector<int> s) { supported_ = std::move(s); }

    // known concrete entries of box n (canonical)
    const std::vector<Basket>& known(int n) const;
    bool is_known(const Basket& canonical_x) const;
    // named entry whose basket is x, if any
    std::optional<std::string> name_of(const Basket& canonical_x) const;
    // cited-only slots still free after reconcile()
    std::vector<const TableEntry*> free_slots(int n) const;

    // Every cyclic basket over Z/n satisfying the necessary conditions
    // (canonical, sorted). Cached.
    const std::vector<Basket>& envelope(int n) const;

    bool operator==(const CyclicBasketTable& o) const { return boxes_ == o.boxes_ && supported_ == o.supported_; }

private:
    void rebuild_index();
    std::map<int, TableBox> boxes_;
    std::vector<int> supported_ = {2, 3, 4, 5, 6, 8};
    std::map<int, std::vector<Basket>> known_;
    mutable std::mutex env_mu_;
    mutable std::map<int, std::shared_ptr<const std::vector<Basket>>> envelope_;
};

// Canonical cyclic torsion basket over Z/n from entries with one label each.
Basket cyclic_basket(int n, std::vector<LabeledSingularity> entries);

// First failed necessary condition for a cyclic torsion basket X over Z/n,
// or nullopt. Conditions: supported indices, a point of exact order n,
// chi(k tau) = 0 for 0 < k < n, the c2 identity of the n-fold cover
//   sum_Q [n(r - 1/r) - (n/d)(r/d - d/r)] = 24(n - 1),
// and no restriction to a multiple k tau being a non-member.
std::optional<std::string> necessary_violation(const CyclicBasketTable& t, const Basket& x);

// Tri-state membership of X (any cyclic torsion basket) in box n. With a
// slot state, a closed box may bind a free shape-compatible cited-only
// slot; the result is then Unknown.
MembershipResult membership(const CyclicBasketTable& t, const Basket& x, SlotState* slots = nullptr);

// Is copies x S (cyclic entries over Z/box) an entry of box `box`?
// Throws TableIncompleteError when the box is missing or the answer
// depends on entries the table doesn't list.
bool replicate_check(const std::vector<LabeledSingularity>& s, int copies, const CyclicBasketTable& t, int box);

} // namespace tfano
