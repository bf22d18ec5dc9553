#pragma once

// A Z/3 family built from the McKay-Thompson series of 3A, satisfying the
// family invariants: (h^i, 1) = T_3A, (1, h^j) = T_3A(tau/3), and the
// remaining entries by tau -> tau - 1.

#include "qseries/catalog.hpp"
#include "qseries/modforms.hpp"
#include "qseries/orbifold.hpp"

inline qseries::FracSeries t3a(std::int64_t order)
{
    using namespace qseries;
    EtaQuotientSpec a, b;
    a.factors = {{Rational(1), 12}, {Rational(3), -12}};
    a.constant_shift = 12;
    b.factors = {{Rational(3), 12}, {Rational(1), -12}};
    b.multiplier = 729;
    return eta_quotient(a, order) + eta_quotient(b, order);
}

inline qseries::TraceFamily synthetic_3a_family(std::int64_t order)
{
    using namespace qseries;
    TraceFamily fam("family:3A", AbelianGroup({3}));
    const FracSeries T = t3a(order);
    const FracSeries sector = T.with_grading(3);
    fam.set({0}, {0}, catalog_series("J", order));
    for (int i = 1; i < 3; ++i) fam.set({i}, {0}, T);
    for (int j = 1; j < 3; ++j) {
        for (int s = 0; s < 3; ++s) {
            // (h^(s j), h^j) = (1, h^j) at tau - s
            fam.set({(s * j) % 3}, {j}, mobius_substitute(sector, 1, -s, 1));
        }
        fam.set_fricke({j}, true);
    }
    fam.set_fricke({0}, true);
    return fam;
}
