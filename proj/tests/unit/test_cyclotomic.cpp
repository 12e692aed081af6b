#include <gtest/gtest.h>

#include "torsion_fano/cyclotomic.hpp"

#include <complex>
#include <numeric>

using namespace tfano;

namespace {

// Euler phi by counting
int phi(int n) {
    int c = 0;
    for (int k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++c;
    return c;
}

std::complex<double> evaluate(const CyclotomicInteger& x) {
    const double pi = std::acos(-1.0);
    std::complex<double> z = std::polar(1.0, 2 * pi / x.conductor()), s = 0, p = 1;
    for (auto c : x.coefficients()) {
        s += static_cast<double>(c) * p;
        p *= z;
    }
    return s;
}

} // namespace

TEST(CyclotomicPolynomial, SmallCases) {
    EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<std::int64_t>{-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(2), (std::vector<std::int64_t>{1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<std::int64_t>{1, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<std::int64_t>{1, -1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(8), (std::vector<std::int64_t>{1, 0, 0, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
}

TEST(CyclotomicPolynomial, DegreeIsEulerPhiAndProductIsXnMinusOne) {
    for (int n = 1; n <= 30; ++n) EXPECT_EQ(static_cast<int>(cyclotomic_polynomial(n).size()) - 1, phi(n)) << n;
    // prod_{d | 12} Phi_d = x^12 - 1
    std::vector<std::int64_t> prod = {1};
    for (int d = 1; d <= 12; ++d) {
        if (12 % d) continue;
        const auto& f = cyclotomic_polynomial(d);
        std::vector<std::int64_t> next(prod.size() + f.size() - 1, 0);
        for (std::size_t i = 0; i < prod.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += prod[i] * f[j];
        prod = next;
    }
    std::vector<std::int64_t> want(13, 0);
    want[0] = -1;
    want[12] = 1;
    EXPECT_EQ(prod, want);
}

TEST(CyclotomicInteger, RootsSumToZeroAndPowerToOne) {
    for (int n : {2, 3, 4, 6, 8, 12}) {
        CyclotomicInteger s(n);
        for (int k = 0; k < n; ++k) s += CyclotomicInteger::root(n, k);
        EXPECT_TRUE(s.is_rational_integer());
        EXPECT_EQ(s.to_integer(), 0) << n;
        CyclotomicInteger p(n, 1);
        for (int k = 0; k < n; ++k) p = p * CyclotomicInteger::root(n, 1);
        EXPECT_EQ(p, CyclotomicInteger(n, 1));
        EXPECT_EQ(CyclotomicInteger::root(n, -1) * CyclotomicInteger::root(n, 1), CyclotomicInteger(n, 1));
    }
}

TEST(CyclotomicInteger, AgreesWithComplexEvaluation) {
    const int n = 8;
    const double pi = std::acos(-1.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto x = CyclotomicInteger::root(n, a) * 3 - CyclotomicInteger::root(n, b) * CyclotomicInteger::root(n, a);
            const auto want = 3.0 * std::polar(1.0, 2 * pi * a / n) - std::polar(1.0, 2 * pi * (a + b) / n);
            EXPECT_NEAR(std::abs(evaluate(x) - want), 0.0, 1e-9);
        }
}

TEST(CyclotomicInteger, NonIntegerRefusesConversion) {
    const auto i = CyclotomicInteger::root(4, 1);
    EXPECT_FALSE(i.is_rational_integer());
    EXPECT_THROW(i.to_integer(), std::domain_error);
    EXPECT_EQ((i * i).to_integer(), -1);
}
