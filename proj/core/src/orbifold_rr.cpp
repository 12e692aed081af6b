#include "torsion_fano/orbifold_rr.hpp"
#include "torsion_fano/errors.hpp"

#include <map>
#include <mutex>

namespace tfano {

Rational local_correction(const SingularityGerm& q, int i) {
    const int r = q.index();
    i = static_cast<int>(mod_floor(i, r));
    const long long b = mod_inverse(q.weight(), r);
    Rational c(-static_cast<long long>(i) * (static_cast<long long>(r) * r - 1), 12LL * r);
    for (int j = 1; j < i; ++j) {
        const long long bj = mod_floor(j * b, r);
        c += Rational(bj * (r - bj), 2LL * r);
    }
    return c;
}

Rational k_dot_c2(const Basket& b) { return Rational(24) - b.mass(); }

Rational twisted_chi(const FanoNumericalData& x, int n, const GroupClass& c) {
    if (n < 0) throw std::invalid_argument("twisted_chi needs n >= 0");
    const auto& g = x.basket.group();
    g.validate(c);
    const Rational nn(n);
    Rational chi = Rational(1) + nn * (nn + 1) * (2 * nn + 1) / 12 * x.degree + nn / 12 * k_dot_c2(x.basket);
    for (const auto& q : x.basket.entries())
        chi += local_correction(q.germ, label_at(g, q, c) - n);
    return chi;
}

std::int64_t twisted_h0(const FanoNumericalData& x, int n, const GroupClass& c) {
    const Rational chi = twisted_chi(x, n, c);
    if (chi.denominator() != 1)
        throw BasketDegreeInconsistencyError("chi(-" + std::to_string(n) + "K + " + c.to_string() + ") = " +
                                             to_string(chi) + " is not an integer");
    if (n == 0 && !c.is_zero()) return 0;
    return chi.numerator();
}

Rational torsion_chi_at_zero(const Basket& b, const GroupClass& c) {
    Rational chi(1);
    for (const auto& q : b.entries()) chi += local_correction(q.germ, label_at(b.group(), q, c));
    return chi;
}

TorsionVanishingReport torsion_vanishing_check(const FanoNumericalData& x) {
    TorsionVanishingReport rep;
    const auto& g = x.basket.group();
    long long period = 1;
    for (const auto& q : x.basket.entries()) period = lcm64(period, q.germ.index());
    rep.checked_up_to = static_cast<int>(period);
    for (const auto& c : g.elements()) {
        if (!c.is_zero()) {
            const Rational v = twisted_chi(x, 0, c);
            if (v != Rational(0)) rep.failures.push_back({"vanishing", c, 0, v});
        }
        for (int n = 1; n <= period; ++n) {
            const Rational v = twisted_chi(x, n, c);
            if (v.denominator() != 1) rep.failures.push_back({"integrality", c, n, v});
        }
    }
    rep.passed = rep.failures.empty();
    return rep;
}

GradedSeries equivariant_hilbert_series(const FanoNumericalData& x, int order) {
    const auto& g = x.basket.group();
    GradedSeries s(g, order);
    const auto elems = g.elements();
    for (int n = 0; n <= order; ++n)
        for (const auto& c : elems) {
            const auto h = twisted_h0(x, n, c);
            if (h != 0) s.at(n).add_to(c, h);
        }
    return s;
}

} // namespace tfano
