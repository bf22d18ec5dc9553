#include <doctest.h>

#include "oracle.hpp"
#include "qseries/catalog.hpp"
#include "qseries/errors.hpp"
#include "qseries/faber.hpp"

using namespace qseries;

TEST_CASE("Faber polynomials of J")
{
    const FracSeries J = catalog_series("J", 12);
    const auto P = faber_all(J, 10);
    CHECK(P[0].to_string() == "x");
    CHECK(P[1].to_string() == "x^2 - 393768");
    CHECK(P[2].to_string() == "x^3 - 590652*x - 64481280");
    for (int n = 1; n <= 10; ++n) {
        const FracSeries v = P[n - 1].evaluate(J).truncated_at(Rational(1));
        CHECK(compare_series(v, FracSeries::monomial(1, -n, 1, 1)).equal);
    }
}

TEST_CASE("Faber polynomial P_4 against the power-sum recursion")
{
    // P_4 = x^4 - 4 a1 x^2 - 4 a2 x + 2 a1^2 - 4 a3 for t = q^-1 + a1 q + a2 q^2 + a3 q^3.
    const FracSeries t = FracSeries::from_coefficients(1, -1, {1, 0, 5, -2, 3}, 4);
    const FaberPoly P = faber(t, 4);
    const FormalPoly want{Cyclotomic(2 * 25 - 12), Cyclotomic(8), Cyclotomic(-20), Cyclotomic(0), Cyclotomic(1)};
    CHECK(formal_equal(P.coefficients, want));
}

TEST_CASE("Faber preconditions")
{
    const FracSeries shifted = catalog_series("Leech", 6);
    CHECK_THROWS_AS(faber(shifted, 2), PreconditionError);
    CHECK_THROWS_AS(faber(catalog_series("J", 2), 4), TruncationError);
}

TEST_CASE("generating relation")
{
    const auto r = faber_generating_check(catalog_series("J", 8), 6);
    CHECK(r.equal);
    CHECK_FALSE(r.mismatch_power.has_value());
}
