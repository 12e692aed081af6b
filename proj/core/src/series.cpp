#include "torsion_fano/series.hpp"
#include "torsion_fano/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tfano {

GradedSeries::GradedSeries(FiniteAbelianGroup g, int order) : group(std::move(g)) {
    coeffs.assign(static_cast<std::size_t>(std::max(order, -1) + 1), GroupRingElement(group));
}

std::vector<std::int64_t> GradedSeries::augmented() const {
    std::vector<std::int64_t> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(c.augmentation());
    return out;
}

std::vector<std::int64_t> GradedSeries::component(const GroupClass& c) const {
    std::vector<std::int64_t> out;
    out.reserve(coeffs.size());
    for (const auto& e : coeffs) out.push_back(e.coefficient(c));
    return out;
}

GradedSeries GradedSeries::truncated(int n) const {
    GradedSeries out = *this;
    out.coeffs.resize(static_cast<std::size_t>(std::min(n, order()) + 1), GroupRingElement(group));
    return out;
}

GroupRingElement GroupRingPolynomial::coefficient(int n) const {
    if (n < 0 || n > degree()) return GroupRingElement(group);
    return coeffs[static_cast<std::size_t>(n)];
}

void GroupRingPolynomial::add_term(int n, const GroupRingElement& c) {
    if (n < 0) throw std::invalid_argument("negative degree");
    if (n > degree()) coeffs.resize(static_cast<std::size_t>(n) + 1, GroupRingElement(group));
    coeffs[static_cast<std::size_t>(n)] += c;
}

void GroupRingPolynomial::trim() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

namespace {

// s *= 1 / (1 - [c] t^w), in place
void divide_factor(GradedSeries& s, const DenominatorFactor& f) {
    const auto x = GroupRingElement::delta(s.group, f.cls);
    for (int n = f.weight; n <= s.order(); ++n) s.at(n) += x * s.at(n - f.weight);
}

// s *= (1 - [c] t^w), in place
void multiply_factor(GradedSeries& s, const DenominatorFactor& f) {
    const auto x = GroupRingElement::delta(s.group, f.cls);
    for (int n = s.order(); n >= f.weight; --n) s.at(n) -= x * s.at(n - f.weight);
}

} // namespace

GradedSeries expand(const RationalPresentation& rp, int order) {
    const auto& g = rp.numerator.group;
    GradedSeries s(g, order);
    for (int n = 0; n <= std::min(order, rp.numerator.degree()); ++n) s.at(n) = rp.numerator.coefficient(n);
    for (const auto& f : rp.denominator) {
        g.validate(f.cls);
        if (f.weight < 1) throw std::invalid_argument("denominator weight must be positive");
        divide_factor(s, f);
    }
    return s;
}

GroupRingPolynomial recover_numerator(const GradedSeries& s, const std::vector<DenominatorFactor>& factors,
                                      int degree_bound) {
    if (s.order() < degree_bound)
        throw NotAMatchError("series known to t^" + std::to_string(s.order()) + " but numerator bound is " +
                             std::to_string(degree_bound));
    GradedSeries work = s;
    for (const auto& f : factors) {
        s.group.validate(f.cls);
        multiply_factor(work, f);
    }
    for (int n = degree_bound + 1; n <= work.order(); ++n)
        if (!work.at(n).is_zero())
            throw NotAMatchError("numerator has a nonzero term at t^" + std::to_string(n) + " beyond bound " +
                                 std::to_string(degree_bound));
    GroupRingPolynomial p(s.group);
    for (int n = 0; n <= degree_bound; ++n) p.add_term(n, work.at(n));
    p.trim();
    return p;
}

GeneratorInference infer_generators(const GradedSeries& s, int max_degree) {
    const auto& g = s.group;
    const int top = max_degree < 0 ? s.order() : std::min(max_degree, s.order());
    if (s.order() < 0) throw InconsistentSeriesError("empty series");
    if (s.at(0) != GroupRingElement::one(g))
        throw InconsistentSeriesError("degree-0 term must be 1, got " + s.at(0).to_string());
    for (int n = 0; n <= top; ++n)
        for (auto v : s.at(n).dense())
            if (v < 0) throw InconsistentSeriesError("negative coefficient at t^" + std::to_string(n));

    GeneratorInference out;
    GradedSeries free_ring(g, top);   // Hilbert series of the free ring on the generators so far
    free_ring.at(0) = GroupRingElement::one(g);
    const auto elems = g.elements();
    for (int n = 1; n <= top; ++n) {
        std::vector<DenominatorFactor> fresh;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            const std::int64_t deficit = s.at(n).dense()[i] - free_ring.at(n).dense()[i];
            if (deficit > 0)
                for (std::int64_t k = 0; k < deficit; ++k) fresh.push_back({elems[i], n});
            else if (deficit < 0)
                out.relations.push_back({n, elems[i], -deficit});
        }
        for (const auto& f : fresh) {
            divide_factor(free_ring, f);
            out.generators.push_back(f);
        }
    }
    std::sort(out.generators.begin(), out.generators.end());
    return out;
}

std::string class_monomial(const GroupClass& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        s += "e" + std::to_string(i + 1);
        if (c[i] != 1) s += "^" + std::to_string(c[i]);
    }
    return s.empty() ? "1" : s;
}

namespace {

std::string tpow(int n) {
    if (n == 0) return "";
    if (n == 1) return "t";
    return "t^" + std::to_string(n);
}

// integer polynomial in t, "1 - 2t^2 + t^4"
std::string format_poly(const std::vector<std::int64_t>& a) {
    std::string s;
    for (std::size_t n = 0; n < a.size(); ++n) {
        std::int64_t v = a[n];
        if (v == 0) continue;
        const bool neg = v < 0;
        if (neg) v = -v;
        if (s.empty()) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        if (v != 1 || n == 0) s += std::to_string(v);
        s += tpow(static_cast<int>(n));
    }
    return s.empty() ? "0" : s;
}

} // namespace

std::string format_integer_series(const std::vector<std::int64_t>& a, bool with_tail) {
    std::string s = format_poly(a);
    if (with_tail) s += " + O(" + tpow(static_cast<int>(a.size())) + ")";
    return s;
}

std::string format_series(const GradedSeries& s) {
    std::ostringstream os;
    for (int n = 0; n <= s.order(); ++n) {
        os << "t^" << n << ": ";
        const auto& e = s.at(n);
        bool first = true;
        for (std::size_t i = 0; i < e.dense().size(); ++i) {
            const auto v = e.dense()[i];
            if (v == 0) continue;
            if (!first) os << (v < 0 ? " - " : " + ");
            else if (v < 0) os << "-";
            first = false;
            const auto c = s.group.class_at(i);
            const auto av = v < 0 ? -v : v;
            if (c.is_zero()) os << av;
            else os << (av == 1 ? "" : std::to_string(av)) << class_monomial(c);
        }
        if (first) os << "0";
        os << "\n";
    }
    return os.str();
}

std::string format_numerator(const GroupRingPolynomial& p) {
    std::string s;
    for (std::size_t i = 0; i < static_cast<std::size_t>(p.group.order()); ++i) {
        std::vector<std::int64_t> a;
        for (const auto& e : p.coeffs) a.push_back(e.dense()[i]);
        if (std::all_of(a.begin(), a.end(), [](auto v) { return v == 0; })) continue;
        const auto c = p.group.class_at(i);
        if (!s.empty()) s += " + ";
        if (c.is_zero()) s += format_poly(a);
        else s += class_monomial(c) + "(" + format_poly(a) + ")";
    }
    return s.empty() ? "0" : s;
}

std::string format_denominator(const std::vector<DenominatorFactor>& f) {
    std::map<DenominatorFactor, int> count;
    for (const auto& x : f) ++count[x];
    std::string s;
    for (const auto& [x, k] : count) {
        s += "(1 - ";
        if (!x.cls.is_zero()) s += class_monomial(x.cls);
        s += tpow(x.weight) + ")";
        if (k > 1) s += "^" + std::to_string(k);
    }
    return s.empty() ? "1" : s;
}

} // namespace tfano
