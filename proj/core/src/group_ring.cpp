#include "torsion_fano/group_ring.hpp"
#include "torsion_fano/errors.hpp"

#include <algorithm>
#include <numeric>

namespace tfano {

GroupRingElement::GroupRingElement(FiniteAbelianGroup g)
    : group_(std::move(g)), coeffs_(static_cast<std::size_t>(group_.order()), 0) {}

GroupRingElement GroupRingElement::delta(const FiniteAbelianGroup& g, const GroupClass& c, std::int64_t coeff) {
    GroupRingElement e(g);
    e.coeffs_[g.index_of(c)] = coeff;
    return e;
}

std::int64_t GroupRingElement::coefficient(const GroupClass& c) const { return coeffs_[group_.index_of(c)]; }

void GroupRingElement::add_to(const GroupClass& c, std::int64_t v) { coeffs_[group_.index_of(c)] += v; }

std::int64_t GroupRingElement::augmentation() const {
    return std::accumulate(coeffs_.begin(), coeffs_.end(), std::int64_t{0});
}

bool GroupRingElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t v) { return v == 0; });
}

void GroupRingElement::require_same(const GroupRingElement& o) const {
    if (group_ != o.group_)
        throw GroupMismatchError("group ring elements over " + group_.to_string() + " and " + o.group_.to_string());
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

GroupRingElement& GroupRingElement::operator*=(std::int64_t k) {
    for (auto& v : coeffs_) v *= k;
    return *this;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    a.require_same(b);
    const auto& g = a.group_;
    GroupRingElement out(g);
    const std::size_t n = a.coeffs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i] == 0) continue;
        const auto ci = g.class_at(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (b.coeffs_[j] == 0) continue;
            out.coeffs_[g.index_of(g.add(ci, g.class_at(j)))] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return out;
}

GroupRingElement GroupRingElement::apply(const GroupAutomorphism& phi) const {
    GroupRingElement out(group_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) out.coeffs_[group_.index_of(phi.apply(group_, group_.class_at(i)))] += coeffs_[i];
    return out;
}

std::string GroupRingElement::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        std::int64_t v = coeffs_[i];
        if (v == 0) continue;
        const bool neg = v < 0;
        if (neg) v = -v;
        if (s.empty()) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        if (i == 0) {
            s += std::to_string(v);
        } else {
            if (v != 1) s += std::to_string(v);
            s += "[" + group_.class_at(i).to_string() + "]";
        }
    }
    return s.empty() ? "0" : s;
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
    return group_ == o.group_ && coeffs_ == o.coeffs_;
}

} // namespace tfano
