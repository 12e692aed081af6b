#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tfano {

// Coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(int n);

// Exact element of Z[zeta_N], stored reduced mod Phi_N so that equality
// and integrality are decided on coefficients.
class CyclotomicInteger {
public:
    explicit CyclotomicInteger(int n = 1, std::int64_t value = 0);
    static CyclotomicInteger root(int n, std::int64_t k);   // zeta_N^k

    int conductor() const noexcept { return n_; }
    const std::vector<std::int64_t>& coefficients() const noexcept { return c_; }

    bool is_rational_integer() const;
    std::int64_t to_integer() const;   // throws std::domain_error otherwise

    CyclotomicInteger& operator+=(const CyclotomicInteger& o);
    CyclotomicInteger& operator-=(const CyclotomicInteger& o);
    CyclotomicInteger& operator*=(std::int64_t k);
    friend CyclotomicInteger operator+(CyclotomicInteger a, const CyclotomicInteger& b) { return a += b; }
    friend CyclotomicInteger operator-(CyclotomicInteger a, const CyclotomicInteger& b) { return a -= b; }
    friend CyclotomicInteger operator*(CyclotomicInteger a, std::int64_t k) { return a *= k; }
    friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b);
    bool operator==(const CyclotomicInteger& o) const { return n_ == o.n_ && c_ == o.c_; }

    std::string to_string() const;

private:
    void reduce(std::vector<std::int64_t> raw);
    int n_;
    std::vector<std::int64_t> c_;   // length phi(N)
};

} // namespace tfano
