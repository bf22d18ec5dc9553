#include <doctest.h>

#include "qseries/biseries.hpp"
#include "qseries/errors.hpp"
#include "qseries/series.hpp"

using namespace qseries;

namespace {

// 1/(1 - q) known below q^high.
FracSeries geometric(std::int64_t high)
{
    return FracSeries::from_coefficients(1, 0, std::vector<Cyclotomic>(static_cast<std::size_t>(high), Cyclotomic(1)),
                                         high);
}

} // namespace

TEST_CASE("truncation propagates through products")
{
    const FracSeries a = FracSeries::monomial(1, -1, 1, 5) + FracSeries::constant(2, 5);
    const FracSeries b = geometric(5);
    const FracSeries c = a * b;
    // q^-1 shifts the known range of b down by one.
    CHECK(c.high() == 4);
    CHECK(c.coefficient(-1) == Cyclotomic(1));
    CHECK(c.coefficient(0) == Cyclotomic(3));
    CHECK(c.coefficient(3) == Cyclotomic(3));
    CHECK_THROWS_AS(c.coefficient(4), TruncationError);
}

TEST_CASE("exact monomials stay exact")
{
    const FracSeries m = FracSeries::monomial(3, 2);
    CHECK(m.is_exact());
    CHECK((m * m).coefficient(4) == Cyclotomic(9));
    CHECK((m * m).is_exact());
}

TEST_CASE("inverse, exp and log")
{
    const FracSeries one_minus_q = FracSeries::constant(1) - FracSeries::monomial(1, 1);
    const FracSeries inv = ser_inv(one_minus_q, 10);
    CHECK(compare_series(inv, geometric(10)).equal);
    CHECK(compare_series(inv, geometric(10)).conclusive_high == 10);

    const FracSeries x = FracSeries::monomial(1, 1, 1, 12);
    const FracSeries e = ser_exp(x);
    CHECK(e.coefficient(3) == Cyclotomic(Rational(1, 6)));
    CHECK(compare_series(ser_log(e), x).equal);
}

TEST_CASE("grading and exponent arithmetic")
{
    const FracSeries h = FracSeries::monomial(1, -1, 2, 3); // q^(-1/2), known below q^(3/2)
    CHECK(h.high_exponent() == Rational(3, 2));
    const FracSeries g = h.regraded(4);
    CHECK(g.grading() == 4);
    CHECK(g.coefficient(-2) == Cyclotomic(1));
    CHECK(h.coefficient_at(Rational(-1, 2)) == Cyclotomic(1));
    CHECK(exponent_string(-1, 2) == "q^(-1/2)");
}

TEST_CASE("mobius substitution")
{
    const FracSeries f = FracSeries::monomial(1, 1, 1, 10); // q, known below q^10
    // q -> zeta_2 q^(1/2)
    const FracSeries s = mobius_substitute(f, 1, 1, 2);
    CHECK(s.grading() == 2);
    CHECK(s.coefficient(1) == Cyclotomic(-1));
    CHECK(s.high_exponent() == Rational(5));
    // tau -> 2 tau
    const FracSeries d = mobius_substitute(f, 2, 0, 1);
    CHECK(d.coefficient(2) == Cyclotomic(1));
    CHECK(d.high() == 20);
}

TEST_CASE("accumulator agrees with the literal sum")
{
    const FracSeries f = FracSeries::from_coefficients(
        1, -1, {Cyclotomic(1), Cyclotomic(0), Cyclotomic(7), Cyclotomic(-3), Cyclotomic(5)}, 4);
    MobiusAccumulator acc;
    FracSeries literal = FracSeries::zero();
    for (int b = 0; b < 3; ++b) {
        acc.add(f, 1, b, 3, Rational(1, 3));
        literal += mobius_substitute(f, 1, b, 3) * Cyclotomic(Rational(1, 3));
    }
    acc.add(f, 3, 0, 1, Rational(1, 3));
    literal += mobius_substitute(f, 3, 0, 1) * Cyclotomic(Rational(1, 3));
    const SeriesComparison cmp = compare_series(acc.result(), literal);
    CHECK(cmp.equal);
    CHECK(acc.result().all_rational());
}

TEST_CASE("bivariate exp and log")
{
    const FracSeries q = FracSeries::monomial(1, 1, 1, 8);
    const BiSeries x = BiSeries::monomial(1, q, 1, 5);
    const BiSeries e = bi_exp(x);
    CHECK(compare_biseries(bi_log(e), x).equal);
    CHECK(compare_biseries(bi_mul(e, bi_inv(e)), BiSeries::one(5)).equal);
    CHECK(e.coefficient(2).coefficient(2) == Cyclotomic(Rational(1, 2)));
}
