#include "torsion_fano/abelian_group.hpp"
#include "torsion_fano/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tfano {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return std::lcm(a, b);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    // extended Euclid on (a mod m, m)
    std::int64_t r0 = mod_floor(a, m), r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1; r0 = r1; r1 = t;
        t = s0 - q * s1; s0 = s1; s1 = t;
    }
    if (r0 != 1) throw std::domain_error("not a unit mod " + std::to_string(m));
    return mod_floor(s0, m);
}

bool GroupClass::is_zero() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
}

std::string GroupClass::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(exps_[i]);
    }
    return s + ")";
}

// ---- groups ------------------------------------------------------------

namespace {

std::vector<std::pair<int, int>> factorize(int n) {
    std::vector<std::pair<int, int>> out;
    for (int p = 2; static_cast<long long>(p) * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

FiniteAbelianGroup FiniteAbelianGroup::from_factors(const std::vector<int>& orders) {
    std::map<int, std::vector<int>> by_prime;  // prime -> exponents
    for (int r : orders) {
        if (r < 1) throw MalformedClassError("cyclic factor order must be positive, got " + std::to_string(r));
        for (auto [p, e] : factorize(r)) by_prime[p].push_back(e);
    }
    std::size_t k = 0;
    for (auto& [p, es] : by_prime) {
        std::sort(es.begin(), es.end(), std::greater<>());
        k = std::max(k, es.size());
    }
    // largest invariant factor collects the largest power of each prime
    std::vector<int> inv(k, 1);
    for (auto& [p, es] : by_prime)
        for (std::size_t i = 0; i < es.size(); ++i) inv[k - 1 - i] *= ipow(p, es[i]);
    return FiniteAbelianGroup(std::move(inv));
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view literal) {
    std::string s;
    for (char ch : literal)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (s.empty()) throw MalformedClassError("empty group literal");
    if (s == "1" || s == "trivial") return FiniteAbelianGroup();
    std::vector<int> orders;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] != 'z') throw MalformedClassError("bad group literal '" + std::string(literal) + "'");
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos || pos - start > 6) throw MalformedClassError("bad group literal '" + std::string(literal) + "'");
        orders.push_back(std::stoi(s.substr(start, pos - start)));
        if (pos < s.size()) {
            if (s[pos] != 'x' && s[pos] != '*') throw MalformedClassError("bad group literal '" + std::string(literal) + "'");
            ++pos;
            if (pos == s.size()) throw MalformedClassError("bad group literal '" + std::string(literal) + "'");
        }
    }
    if (std::any_of(orders.begin(), orders.end(), [](int r) { return r < 1; }))
        throw MalformedClassError("bad group literal '" + std::string(literal) + "'");
    return from_factors(orders);
}

std::int64_t FiniteAbelianGroup::order() const noexcept {
    std::int64_t n = 1;
    for (int r : orders_) n *= r;
    return n;
}

std::string FiniteAbelianGroup::to_string() const {
    if (orders_.empty()) return "Z1";
    std::string s;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        if (i) s += "x";
        s += "Z" + std::to_string(orders_[i]);
    }
    return s;
}

GroupClass FiniteAbelianGroup::zero() const { return GroupClass(std::vector<int>(orders_.size(), 0)); }

GroupClass FiniteAbelianGroup::generator(int i) const {
    if (i < 0 || i >= rank()) throw InvalidClassError("generator index out of range");
    std::vector<int> e(orders_.size(), 0);
    e[static_cast<std::size_t>(i)] = 1 % orders_[static_cast<std::size_t>(i)];
    return GroupClass(std::move(e));
}

GroupClass FiniteAbelianGroup::make_class(const std::vector<int>& exps) const {
    if (exps.size() != orders_.size())
        throw MalformedClassError("class has " + std::to_string(exps.size()) + " entries, group " + to_string() +
                                  " needs " + std::to_string(orders_.size()));
    std::vector<int> e(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) e[i] = static_cast<int>(mod_floor(exps[i], orders_[i]));
    return GroupClass(std::move(e));
}

void FiniteAbelianGroup::validate(const GroupClass& c) const {
    if (c.size() != orders_.size())
        throw MalformedClassError("class " + c.to_string() + " does not fit " + to_string());
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] < 0 || c[i] >= orders_[i])
            throw MalformedClassError("class " + c.to_string() + " out of range for " + to_string());
}

GroupClass FiniteAbelianGroup::add(const GroupClass& a, const GroupClass& b) const {
    validate(a);
    validate(b);
    std::vector<int> e(orders_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = (a[i] + b[i]) % orders_[i];
    return GroupClass(std::move(e));
}

GroupClass FiniteAbelianGroup::negate(const GroupClass& a) const { return scale(a, -1); }

GroupClass FiniteAbelianGroup::scale(const GroupClass& a, std::int64_t k) const {
    validate(a);
    std::vector<int> e(orders_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<int>(mod_floor(k * a[i], orders_[i]));
    return GroupClass(std::move(e));
}

int FiniteAbelianGroup::class_order(const GroupClass& c) const {
    validate(c);
    std::int64_t n = 1;
    for (std::size_t i = 0; i < c.size(); ++i) n = lcm64(n, orders_[i] / gcd64(c[i], orders_[i]));
    return static_cast<int>(n);
}

int class_order(const FiniteAbelianGroup& g, const GroupClass& c) { return g.class_order(c); }

std::vector<GroupClass> FiniteAbelianGroup::elements() const {
    std::vector<GroupClass> out;
    const auto n = static_cast<std::size_t>(order());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(class_at(i));
    return out;
}

std::size_t FiniteAbelianGroup::index_of(const GroupClass& c) const {
    validate(c);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < c.size(); ++i) idx = idx * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(c[i]);
    return idx;
}

GroupClass FiniteAbelianGroup::class_at(std::size_t index) const {
    std::vector<int> e(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
        e[i] = static_cast<int>(index % static_cast<std::size_t>(orders_[i]));
        index /= static_cast<std::size_t>(orders_[i]);
    }
    return GroupClass(std::move(e));
}

// ---- characters --------------------------------------------------------

std::int64_t pairing_exponent(const FiniteAbelianGroup& g, const GroupClass& a, const GroupClass& b) {
    const std::int64_t n = g.exponent();
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int r = g.factor_orders()[i];
        s += static_cast<std::int64_t>(a[i]) * b[i] % r * (n / r);
    }
    return mod_floor(s, n);
}

RootOfUnity character_pairing(const FiniteAbelianGroup& g, const Character& chi, const GroupClass& c) {
    const auto& v = chi.values();
    if (v.size() != static_cast<std::size_t>(g.rank()) || c.size() != static_cast<std::size_t>(g.rank()))
        throw GroupMismatchError("character and class are not over " + g.to_string());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int r = g.factor_orders()[i];
        if (v[i] < 0 || v[i] >= r || c[i] < 0 || c[i] >= r)
            throw GroupMismatchError("character or class out of range for " + g.to_string());
    }
    return RootOfUnity{pairing_exponent(g, chi.as_class(), c), g.exponent()};
}

// ---- automorphisms -----------------------------------------------------

GroupClass GroupAutomorphism::apply(const FiniteAbelianGroup& g, const GroupClass& c) const {
    g.validate(c);
    std::vector<int> acc(static_cast<std::size_t>(g.rank()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += c[i] * images_[i][j];
    return g.make_class(acc);
}

GroupAutomorphism GroupAutomorphism::compose(const FiniteAbelianGroup& g, const GroupAutomorphism& other) const {
    std::vector<GroupClass> imgs;
    imgs.reserve(other.images_.size());
    for (const auto& x : other.images_) imgs.push_back(apply(g, x));
    return GroupAutomorphism(std::move(imgs));
}

GroupAutomorphism GroupAutomorphism::inverse(const FiniteAbelianGroup& g) const {
    const auto n = static_cast<std::size_t>(g.order());
    std::vector<GroupClass> pre(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto c = g.class_at(i);
        pre[g.index_of(apply(g, c))] = c;
    }
    std::vector<GroupClass> imgs;
    for (int i = 0; i < g.rank(); ++i) imgs.push_back(pre[g.index_of(g.generator(i))]);
    return GroupAutomorphism(std::move(imgs));
}

bool GroupAutomorphism::is_identity(const FiniteAbelianGroup& g) const {
    for (int i = 0; i < g.rank(); ++i)
        if (images_[static_cast<std::size_t>(i)] != g.generator(i)) return false;
    return true;
}

GroupAutomorphism GroupAutomorphism::identity(const FiniteAbelianGroup& g) {
    std::vector<GroupClass> imgs;
    for (int i = 0; i < g.rank(); ++i) imgs.push_back(g.generator(i));
    return GroupAutomorphism(std::move(imgs));
}

namespace {

// cyclic span <x> added into set `in`
std::vector<char> extend_span(const FiniteAbelianGroup& g, const std::vector<char>& in, const GroupClass& x) {
    std::vector<char> out = in;
    const int ord = g.class_order(x);
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (!in[i]) continue;
        GroupClass s = g.class_at(i);
        for (int m = 1; m < ord; ++m) {
            s = g.add(s, x);
            out[g.index_of(s)] = 1;
        }
    }
    return out;
}

} // namespace

bool is_automorphism(const FiniteAbelianGroup& g, const std::vector<GroupClass>& images) {
    if (images.size() != static_cast<std::size_t>(g.rank())) return false;
    std::vector<char> span(static_cast<std::size_t>(g.order()), 0);
    span[0] = 1;
    for (std::size_t i = 0; i < images.size(); ++i) {
        g.validate(images[i]);
        if (g.factor_orders()[i] % g.class_order(images[i]) != 0) return false;
        span = extend_span(g, span, images[i]);
    }
    return std::all_of(span.begin(), span.end(), [](char c) { return c != 0; });
}

std::vector<GroupAutomorphism> enumerate_automorphisms(const FiniteAbelianGroup& g, std::int64_t bound) {
    if (g.order() > bound)
        throw SizeLimitError("automorphism enumeration limited to |G| <= " + std::to_string(bound) + ", got " +
                             std::to_string(g.order()));
    std::vector<GroupAutomorphism> out;
    const auto elems = g.elements();
    const auto k = static_cast<std::size_t>(g.rank());
    std::vector<GroupClass> imgs(k);
    std::vector<char> base(elems.size(), 0);
    base[0] = 1;

    std::function<void(std::size_t, const std::vector<char>&)> rec = [&](std::size_t i, const std::vector<char>& span) {
        if (i == k) {
            if (std::all_of(span.begin(), span.end(), [](char c) { return c != 0; })) out.emplace_back(imgs);
            return;
        }
        const int r = g.factor_orders()[i];
        for (const auto& x : elems) {
            if (r % g.class_order(x) != 0) continue;   // not a homomorphism
            if (span[g.index_of(x)]) continue;          // rank would drop
            imgs[i] = x;
            rec(i + 1, extend_span(g, span, x));
        }
    };
    rec(0, base);
    return out;
}

// ---- Smith normal form / quotients ----------------------------------------

SmithForm smith_normal_form(std::vector<std::vector<std::int64_t>> a, std::size_t cols) {
    const std::size_t rows = a.size();
    using Mat = std::vector<std::vector<std::int64_t>>;
    Mat v(cols, std::vector<std::int64_t>(cols, 0)), vi = v;
    for (std::size_t i = 0; i < cols; ++i) v[i][i] = vi[i][i] = 1;

    auto col_add = [&](std::size_t dst, std::size_t src, std::int64_t q) {  // col_dst += q col_src
        for (std::size_t r = 0; r < rows; ++r) a[r][dst] += q * a[r][src];
        for (std::size_t r = 0; r < cols; ++r) v[r][dst] += q * v[r][src];
        for (std::size_t c = 0; c < cols; ++c) vi[src][c] -= q * vi[dst][c];
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        for (std::size_t r = 0; r < cols; ++r) std::swap(v[r][i], v[r][j]);
        std::swap(vi[i], vi[j]);
    };
    auto col_neg = [&](std::size_t i) {
        for (std::size_t r = 0; r < rows; ++r) a[r][i] = -a[r][i];
        for (std::size_t r = 0; r < cols; ++r) v[r][i] = -v[r][i];
        for (std::size_t c = 0; c < cols; ++c) vi[i][c] = -vi[i][c];
    };
    auto row_add = [&](std::size_t dst, std::size_t src, std::int64_t q) {
        for (std::size_t c = 0; c < cols; ++c) a[dst][c] += q * a[src][c];
    };

    std::vector<std::int64_t> diag;
    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // smallest nonzero pivot in the lower-right block
            std::size_t pr = rows, pc = cols;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c)
                    if (a[r][c] != 0 && (pr == rows || std::llabs(a[r][c]) < std::llabs(a[pr][pc]))) { pr = r; pc = c; }
            if (pr == rows) break;
            std::swap(a[t], a[pr]);
            if (pc != t) col_swap(t, pc);
            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (a[r][t] == 0) continue;
                row_add(r, t, -(a[r][t] / a[t][t]));
                if (a[r][t] != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (a[t][c] == 0) continue;
                col_add(c, t, -(a[t][c] / a[t][t]));
                if (a[t][c] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the rest
            bool divides = true;
            for (std::size_t r = t + 1; r < rows && divides; ++r)
                for (std::size_t c = t + 1; c < cols; ++c)
                    if (a[r][c] % a[t][t] != 0) { row_add(t, r, 1); divides = false; break; }
            if (divides) break;
        }
        if (a[t][t] < 0) col_neg(t);
        diag.push_back(a[t][t]);
    }
    while (diag.size() < cols) diag.push_back(0);
    return SmithForm{std::move(diag), std::move(v), std::move(vi)};
}

GroupClass QuotientMap::project(const FiniteAbelianGroup& source, const GroupClass& c) const {
    source.validate(c);
    std::vector<int> acc(static_cast<std::size_t>(target.rank()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < acc.size(); ++j)
            acc[j] = static_cast<int>(mod_floor(acc[j] + static_cast<std::int64_t>(c[i]) * generator_images[i][j],
                                                target.factor_orders()[j]));
    return GroupClass(std::move(acc));
}

QuotientMap quotient_by(const FiniteAbelianGroup& g, const GroupClass& c) {
    g.validate(c);
    const auto k = static_cast<std::size_t>(g.rank());
    std::vector<std::vector<std::int64_t>> rel;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::int64_t> row(k, 0);
        row[i] = g.factor_orders()[i];
        rel.push_back(row);
    }
    rel.emplace_back(c.exponents().begin(), c.exponents().end());
    const SmithForm snf = smith_normal_form(rel, k);

    std::vector<std::size_t> keep;
    std::vector<int> orders;
    for (std::size_t j = 0; j < k; ++j)
        if (snf.diagonal[j] != 1) {
            keep.push_back(j);
            orders.push_back(static_cast<int>(snf.diagonal[j]));
        }
    QuotientMap q;
    q.target = FiniteAbelianGroup::from_factors(orders);
    if (q.target.factor_orders() != orders) throw std::logic_error("Smith form not in invariant-factor order");
    // x -> (x V)_j mod d_j
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<int> img;
        for (std::size_t idx = 0; idx < keep.size(); ++idx)
            img.push_back(static_cast<int>(mod_floor(snf.v[i][keep[idx]], orders[idx])));
        q.generator_images.emplace_back(std::move(img));
    }
    for (std::size_t idx = 0; idx < keep.size(); ++idx) {
        std::vector<int> lift(k);
        for (std::size_t i = 0; i < k; ++i)
            lift[i] = static_cast<int>(mod_floor(snf.v_inverse[keep[idx]][i], g.factor_orders()[i]));
        q.lifts.emplace_back(std::move(lift));
    }
    return q;
}

} // namespace tfano
