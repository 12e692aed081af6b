#pragma once

#include "torsion_fano/basket.hpp"
#include "torsion_fano/rational.hpp"
#include "torsion_fano/series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tfano {

// Local contribution of a terminal point 1/r(1,a,-a) to chi(D) when D is
// locally i*K_X (i taken mod r):
//   -i(r^2-1)/(12r) + sum_{j=1}^{i-1} bj(r-bj)/(2r),  bj = (j*b mod r), b = a^{-1}.
Rational local_correction(const SingularityGerm& q, int i);

// Numerical data of a Fano 3-fold with torsion: degree (-K)^3 and the full
// basket (torsion entries plus zero-labelled residual points).
struct FanoNumericalData {
    Rational degree{0};
    Basket basket;
};

// -K.c2 = 24 - sum (r - 1/r)
Rational k_dot_c2(const Basket& b);

// chi(O(-nK + c)) from orbifold Riemann-Roch, n >= 0
Rational twisted_chi(const FanoNumericalData& x, int n, const GroupClass& c);
// h^0 = chi by Kawamata-Viehweg; nontrivial torsion has no sections at n = 0.
// Throws BasketDegreeInconsistencyError if chi is not an integer.
std::int64_t twisted_h0(const FanoNumericalData& x, int n, const GroupClass& c);

// chi(O(c)) for a torsion class, = 1 + sum_Q c_Q(phi_Q(c))
Rational torsion_chi_at_zero(const Basket& b, const GroupClass& c);

struct TorsionVanishingFailure {
    std::string kind;   // "vanishing" or "integrality"
    GroupClass cls;
    int n = 0;
    Rational value{0};
};

struct TorsionVanishingReport {
    bool passed = true;
    std::vector<TorsionVanishingFailure> failures;
    int checked_up_to = 0;   // integrality checked for n = 1..checked_up_to
};

// chi(c) = 0 for every nonzero class, and chi(-nK+c) integral for
// n up to lcm of the local indices (the RR expression is periodic in n mod
// lcm up to a polynomial with integral values once these hold).
TorsionVanishingReport torsion_vanishing_check(const FanoNumericalData& x);

GradedSeries equivariant_hilbert_series(const FanoNumericalData& x, int order);

} // namespace tfano
