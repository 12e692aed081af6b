#include "torsion_fano/molien.hpp"
#include "torsion_fano/cyclotomic.hpp"
#include "torsion_fano/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace tfano {

int CoverModel::fano_index() const {
    return std::accumulate(weights.begin(), weights.end(), 0) -
           std::accumulate(equation_degrees.begin(), equation_degrees.end(), 0);
}

int CoverModel::dimension() const {
    return static_cast<int>(weights.size()) - 1 - static_cast<int>(equation_degrees.size());
}

Rational CoverModel::degree() const {
    Rational d(1);
    for (int e : equation_degrees) d *= e;
    for (int w : weights) d /= w;
    const long long i = fano_index();
    return d * (i * i * i);
}

void CoverModel::validate() const {
    if (weights.empty()) throw CatalogError(name + ": no coordinates");
    for (int w : weights)
        if (w < 1) throw CatalogError(name + ": weights must be positive");
    for (int d : equation_degrees)
        if (d < 1) throw CatalogError(name + ": degrees must be positive");
    if (dimension() != 3) throw CatalogError(name + ": not a 3-fold");
    if (fano_index() < 1) throw CatalogError(name + ": not Fano");
    if (!basket.group().is_trivial()) throw CatalogError(name + ": cover basket must be over the trivial group");
}

namespace {

void check_shapes(const CoverModel& y, const DiagonalAction& act) {
    if (act.coordinate_characters.size() != y.weights.size())
        throw CharacterInconsistencyError("action has " + std::to_string(act.coordinate_characters.size()) +
                                          " coordinate characters for " + std::to_string(y.weights.size()) +
                                          " coordinates");
    if (act.equation_characters.size() != y.equation_degrees.size())
        throw CharacterInconsistencyError("action has " + std::to_string(act.equation_characters.size()) +
                                          " equation characters for " + std::to_string(y.equation_degrees.size()) +
                                          " equations");
    try {
        for (const auto& c : act.coordinate_characters) act.group.validate(c);
        for (const auto& c : act.equation_characters) act.group.validate(c);
    } catch (const MalformedClassError& e) {
        throw CharacterInconsistencyError(e.what());
    }
}

// exponent vectors supported on `mask` with weighted degree d
void monomials(const std::vector<int>& w, unsigned mask, int d, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> e(w.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == w.size()) {
            if (left == 0) f(e);
            return;
        }
        if (!(mask >> i & 1u)) {
            rec(i + 1, left);
            return;
        }
        for (int k = 0; k * w[i] <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k * w[i]);
        }
        e[i] = 0;
    };
    rec(0, d);
}

GroupClass monomial_character(const DiagonalAction& act, const std::vector<int>& e) {
    GroupClass c = act.group.zero();
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) c = act.group.add(c, act.group.scale(act.coordinate_characters[i], e[i]));
    return c;
}

} // namespace

DiagonalAction canonical_lift(const CoverModel& y, const DiagonalAction& act) {
    check_shapes(y, act);
    const auto& g = act.group;
    GroupClass delta = g.zero();
    for (const auto& c : act.coordinate_characters) delta = g.add(delta, c);
    for (const auto& c : act.equation_characters) delta = g.add(delta, g.negate(c));
    if (delta.is_zero()) return act;
    // psi * index = -delta
    const int idx = y.fano_index();
    std::optional<GroupClass> psi;
    for (const auto& c : g.elements())
        if (g.scale(c, idx) == g.negate(delta)) {
            psi = c;
            break;
        }
    if (!psi) throw CharacterInconsistencyError("no lift of the action makes the canonical class untwisted");
    DiagonalAction out = act;
    for (std::size_t i = 0; i < out.coordinate_characters.size(); ++i)
        out.coordinate_characters[i] = g.add(out.coordinate_characters[i], g.scale(*psi, y.weights[i]));
    for (std::size_t j = 0; j < out.equation_characters.size(); ++j)
        out.equation_characters[j] = g.add(out.equation_characters[j], g.scale(*psi, y.equation_degrees[j]));
    return out;
}

GradedSeries molien_series(const CoverModel& y, const DiagonalAction& act, int order) {
    check_shapes(y, act);
    const auto& g = act.group;
    const int nn = g.exponent();
    const auto elems = g.elements();
    const auto size = static_cast<std::int64_t>(elems.size());

    // trace series of each element on the coordinate ring
    std::vector<std::vector<CyclotomicInteger>> trace;
    for (const auto& h : elems) {
        std::vector<CyclotomicInteger> s(static_cast<std::size_t>(order) + 1, CyclotomicInteger(nn));
        s[0] = CyclotomicInteger(nn, 1);
        for (std::size_t i = 0; i < y.weights.size(); ++i) {
            const auto z = CyclotomicInteger::root(nn, pairing_exponent(g, act.coordinate_characters[i], h));
            const int w = y.weights[i];
            for (int n = w; n <= order; ++n) s[static_cast<std::size_t>(n)] += z * s[static_cast<std::size_t>(n - w)];
        }
        for (std::size_t j = 0; j < y.equation_degrees.size(); ++j) {
            const auto z = CyclotomicInteger::root(nn, pairing_exponent(g, act.equation_characters[j], h));
            const int d = y.equation_degrees[j];
            for (int n = order; n >= d; --n) s[static_cast<std::size_t>(n)] -= z * s[static_cast<std::size_t>(n - d)];
        }
        trace.push_back(std::move(s));
    }

    GradedSeries out(g, order);
    for (const auto& c : elems)
        for (int n = 0; n <= order; ++n) {
            CyclotomicInteger acc(nn);
            for (std::size_t k = 0; k < elems.size(); ++k)
                acc += CyclotomicInteger::root(nn, -pairing_exponent(g, c, elems[k])) * trace[k][static_cast<std::size_t>(n)];
            if (!acc.is_rational_integer())
                throw CharacterInconsistencyError("character average is not rational at t^" + std::to_string(n));
            const auto v = acc.to_integer();
            if (v % size != 0)
                throw CharacterInconsistencyError("character average not divisible by |G| at t^" + std::to_string(n));
            if (v) out.at(n).add_to(c, v / size);
        }
    return out;
}

GradedSeries group_ring_series(const CoverModel& y, const DiagonalAction& act, int order) {
    check_shapes(y, act);
    RationalPresentation rp;
    rp.numerator = GroupRingPolynomial(act.group);
    rp.numerator.add_term(0, GroupRingElement::one(act.group));
    for (std::size_t i = 0; i < y.weights.size(); ++i)
        rp.denominator.push_back({act.coordinate_characters[i], y.weights[i]});
    GradedSeries s = expand(rp, order);
    for (std::size_t j = 0; j < y.equation_degrees.size(); ++j) {
        const auto x = GroupRingElement::delta(act.group, act.equation_characters[j]);
        const int d = y.equation_degrees[j];
        for (int n = order; n >= d; --n) s.at(n) -= x * s.at(n - d);
    }
    return s;
}

EquationSpace invariant_equation_space(const CoverModel& y, const DiagonalAction& act, int equation) {
    check_shapes(y, act);
    if (equation < 0 || equation >= static_cast<int>(y.equation_degrees.size()))
        throw std::out_of_range("equation index");
    EquationSpace sp;
    sp.degree = y.equation_degrees[static_cast<std::size_t>(equation)];
    sp.character = act.equation_characters[static_cast<std::size_t>(equation)];
    const unsigned all = (1u << y.weights.size()) - 1;
    monomials(y.weights, all, sp.degree, [&](const std::vector<int>& e) {
        if (monomial_character(act, e) == sp.character) sp.monomials.push_back(e);
    });
    std::sort(sp.monomials.begin(), sp.monomials.end(), std::greater<>());
    if (sp.monomials.empty())
        throw EmptyLinearSystemError("no monomial of degree " + std::to_string(sp.degree) + " and character " +
                                     sp.character.to_string());
    return sp;
}

// ---- fixed locus -----------------------------------------------------------

namespace {

struct Stabilizer {
    std::vector<std::pair<GroupClass, long long>> elems;   // (g, k): lambda = exp(2 pi i k / M)
    long long modulus = 1;                                  // M
};

std::vector<int> support_of(unsigned mask, std::size_t n) {
    std::vector<int> s;
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u) s.push_back(static_cast<int>(i));
    return s;
}

} // namespace

FixedLocusReport fixed_locus_analysis(const CoverModel& y, const DiagonalAction& act) {
    check_shapes(y, act);
    y.validate();
    const auto& g = act.group;
    const auto nv = y.weights.size();
    const int nn = g.exponent();
    long long wl = 1;
    for (int w : y.weights) wl = lcm64(wl, w);
    for (int d : y.equation_degrees) wl = lcm64(wl, d);
    const long long mm = nn * wl;
    const auto elems = g.elements();
    FixedLocusReport rep;

    auto coord_value = [&](std::size_t i, const GroupClass& h, long long k) {
        return mod_floor(pairing_exponent(g, act.coordinate_characters[i], h) * (mm / nn) + k * y.weights[i], mm);
    };
    auto eq_value = [&](std::size_t j, const GroupClass& h, long long k) {
        return mod_floor(pairing_exponent(g, act.equation_characters[j], h) * (mm / nn) + k * y.equation_degrees[j], mm);
    };
    auto stabilizer = [&](unsigned mask) {
        Stabilizer st;
        st.modulus = mm;
        for (const auto& h : elems)
            for (long long k = 0; k < mm; ++k) {
                bool fixes = true;
                for (std::size_t i = 0; i < nv && fixes; ++i)
                    if ((mask >> i & 1u) && coord_value(i, h, k) != 0) fixes = false;
                if (fixes) st.elems.emplace_back(h, k);
            }
        return st;
    };

    const unsigned full = (1u << nv) - 1;
    std::vector<int> dim(full + 1, -1);
    std::vector<Rational> bezout(full + 1, Rational(0));
    for (unsigned mask = 1; mask <= full; ++mask) {
        int active = 0;
        Rational b(1);
        for (std::size_t j = 0; j < y.equation_degrees.size(); ++j) {
            bool hit = false;
            monomials(y.weights, mask, y.equation_degrees[j], [&](const std::vector<int>& e) {
                if (!hit && monomial_character(act, e) == act.equation_characters[j]) hit = true;
            });
            if (hit) {
                ++active;
                b *= y.equation_degrees[j];
            }
        }
        const int bits = std::popcount(mask);
        dim[mask] = bits - 1 - active;
        if (dim[mask] == 0) {
            for (int i : support_of(mask, nv)) b /= y.weights[static_cast<std::size_t>(i)];
            bezout[mask] = b;
        }
    }

    // points with exact support, by inclusion-exclusion over sub-strata
    std::vector<long long> exact(full + 1, 0);
    auto wgcd = [&](unsigned mask) {
        long long d = 0;
        for (int i : support_of(mask, nv)) d = gcd64(d, y.weights[static_cast<std::size_t>(i)]);
        return d;
    };
    for (unsigned mask = 1; mask <= full; ++mask) {
        if (dim[mask] != 0) continue;
        Rational rest = bezout[mask];
        for (unsigned sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask)
            if (dim[sub] == 0) rest -= Rational(exact[sub], wgcd(sub));
        const Rational e = rest * wgcd(mask);
        if (e.denominator() != 1 || e < Rational(0)) {
            rep.warnings.push_back("stratum " + GroupClass(support_of(mask, nv)).to_string() +
                                   " has a non-integral point count " + to_string(e));
            continue;
        }
        exact[mask] = e.numerator();
    }

    std::vector<LabeledSingularity> predicted;
    for (unsigned mask = 1; mask <= full; ++mask) {
        if (dim[mask] < 0) continue;
        const Stabilizer st = stabilizer(mask);
        if (dim[mask] > 0) {
            if (st.elems.size() > 1)
                rep.warnings.push_back("positive-dimensional locus with nontrivial stabilizer on coordinates " +
                                       GroupClass(support_of(mask, nv)).to_string());
            continue;
        }
        if (exact[mask] == 0 || st.elems.size() <= 1) continue;

        FixedPointType ft;
        ft.support = support_of(mask, nv);
        ft.cover_points = exact[mask];
        ft.stabilizer_order = static_cast<int>(st.elems.size());
        std::set<GroupClass> proj;
        for (const auto& [h, k] : st.elems) proj.insert(h);
        ft.group_stabilizer_order = static_cast<int>(proj.size());
        const long long num = ft.cover_points * ft.group_stabilizer_order;
        if (num % g.order() != 0) {
            ft.problem = "orbit count not integral";
            rep.warnings.push_back(ft.problem);
            rep.types.push_back(ft);
            continue;
        }
        ft.quotient_points = num / g.order();

        // slice representation: coordinates - equation normals - Euler direction
        std::vector<std::vector<long long>> chars;
        for (std::size_t i = 0; i < nv; ++i) {
            std::vector<long long> v;
            for (const auto& [h, k] : st.elems) v.push_back(coord_value(i, h, k));
            chars.push_back(std::move(v));
        }
        bool ok = true;
        auto remove = [&](const std::vector<long long>& v) {
            auto it = std::find(chars.begin(), chars.end(), v);
            if (it == chars.end()) return false;
            chars.erase(it);
            return true;
        };
        for (std::size_t j = 0; j < y.equation_degrees.size() && ok; ++j) {
            std::vector<long long> v;
            for (const auto& [h, k] : st.elems) v.push_back(eq_value(j, h, k));
            ok = remove(v);
        }
        ok = ok && remove(std::vector<long long>(st.elems.size(), 0));
        if (!ok || chars.size() != 3) {
            ft.problem = "not quasi-smooth at the stratum";
            rep.warnings.push_back(ft.problem);
            rep.types.push_back(ft);
            continue;
        }
        const long long m = ft.stabilizer_order;
        // a generator of Gamma
        std::optional<std::size_t> gen;
        for (std::size_t e = 0; e < st.elems.size() && !gen; ++e) {
            const auto& [h, k] = st.elems[e];
            const long long ord = lcm64(g.class_order(h), mm / gcd64(k, mm));
            if (ord == m) gen = e;
        }
        if (!gen) {
            ft.problem = "stabilizer is not cyclic";
            rep.warnings.push_back(ft.problem);
            rep.types.push_back(ft);
            continue;
        }
        std::vector<long long> w3;
        for (const auto& v : chars) w3.push_back(v[*gen] / (mm / m));
        // find the pair summing to zero
        std::optional<int> a;
        long long s = 0;
        for (int z = 0; z < 3 && !a; ++z) {
            const long long ex = w3[static_cast<std::size_t>((z + 1) % 3)], ey = w3[static_cast<std::size_t>((z + 2) % 3)];
            const long long ez = w3[static_cast<std::size_t>(z)];
            if (mod_floor(ex + ey, m) != 0 || gcd64(ez, m) != 1 || gcd64(ex, m) != 1) continue;
            s = mod_inverse(ez, m);
            a = static_cast<int>(mod_floor(ex * s, m));
        }
        if (!a) {
            ft.problem = "quotient germ is not terminal";
            rep.warnings.push_back(ft.problem);
            rep.types.push_back(ft);
            continue;
        }
        ft.germ = SingularityGerm(static_cast<int>(m), *a);
        const auto& h0 = st.elems[*gen].first;
        for (int j = 0; j < g.rank(); ++j) {
            const long long u = pairing_exponent(g, g.generator(j), h0) * (mm / nn) / (mm / m);
            ft.labels.push_back(static_cast<int>(mod_floor(-u * s, m)));
        }
        for (long long q = 0; q < ft.quotient_points; ++q) predicted.push_back({*ft.germ, ft.labels});
        rep.types.push_back(ft);
    }
    rep.predicted = Basket(g, std::move(predicted));

    // per element: eigen-strata and fixed point counts
    for (const auto& h : elems) {
        if (h.is_zero()) continue;
        ElementFixedLocus ef;
        ef.element = h;
        std::set<unsigned> strata;
        for (long long k = 0; k < mm; ++k) {
            unsigned mask = 0;
            for (std::size_t i = 0; i < nv; ++i)
                if (coord_value(i, h, k) == 0) mask |= 1u << i;
            if (mask) strata.insert(mask);
        }
        std::set<unsigned> counted;
        for (unsigned sm : strata) {
            ef.strata.push_back(support_of(sm, nv));
            if (dim[sm] > 0) ef.positive_dimensional = true;
            for (unsigned sub = sm; sub; sub = (sub - 1) & sm)
                if (dim[sub] == 0 && counted.insert(sub).second) ef.fixed_points += exact[sub];
        }
        rep.elements.push_back(std::move(ef));
    }
    return rep;
}

} // namespace tfano
