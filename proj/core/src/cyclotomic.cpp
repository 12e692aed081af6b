#include "torsion_fano/cyclotomic.hpp"
#include "torsion_fano/abelian_group.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace tfano {

namespace {

using Poly = std::vector<std::int64_t>;

// exact division by a monic polynomial
Poly divide_monic(Poly num, const Poly& den) {
    const std::size_t dn = den.size() - 1;
    if (num.size() <= dn) return {0};
    Poly q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        const std::int64_t coef = num[i];
        q[i - dn] = coef;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= coef * den[j];
    }
    return q;
}

} // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic polynomial needs n >= 1");
    static std::map<int, Poly> cache;
    static std::recursive_mutex mu;
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    Poly p(static_cast<std::size_t>(n) + 1, 0);  // x^n - 1
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
    return cache.emplace(n, std::move(p)).first->second;
}

CyclotomicInteger::CyclotomicInteger(int n, std::int64_t value) : n_(n) {
    const auto& phi = cyclotomic_polynomial(n);
    c_.assign(phi.size() - 1, 0);
    c_[0] = value;
}

CyclotomicInteger CyclotomicInteger::root(int n, std::int64_t k) {
    CyclotomicInteger z(n);
    Poly raw(static_cast<std::size_t>(n), 0);
    raw[static_cast<std::size_t>(mod_floor(k, n))] = 1;
    z.reduce(std::move(raw));
    return z;
}

void CyclotomicInteger::reduce(Poly raw) {
    const auto& phi = cyclotomic_polynomial(n_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = raw.size(); i-- > deg;) {
        const std::int64_t coef = raw[i];
        if (coef == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) raw[i - deg + j] -= coef * phi[j];
    }
    raw.resize(deg, 0);
    c_ = std::move(raw);
}

bool CyclotomicInteger::is_rational_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

std::int64_t CyclotomicInteger::to_integer() const {
    if (!is_rational_integer()) throw std::domain_error("cyclotomic integer is not rational: " + to_string());
    return c_[0];
}

CyclotomicInteger& CyclotomicInteger::operator+=(const CyclotomicInteger& o) {
    if (o.n_ != n_) throw std::invalid_argument("cyclotomic conductors differ");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CyclotomicInteger& CyclotomicInteger::operator-=(const CyclotomicInteger& o) {
    if (o.n_ != n_) throw std::invalid_argument("cyclotomic conductors differ");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CyclotomicInteger& CyclotomicInteger::operator*=(std::int64_t k) {
    for (auto& v : c_) v *= k;
    return *this;
}

CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("cyclotomic conductors differ");
    Poly raw(a.c_.size() + b.c_.size(), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) raw[i + j] += a.c_[i] * b.c_[j];
    }
    CyclotomicInteger out(a.n_);
    out.reduce(std::move(raw));
    return out;
}

std::string CyclotomicInteger::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += std::to_string(c_[i]);
        if (i == 1) s += "*z";
        else if (i > 1) s += "*z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

} // namespace tfano
