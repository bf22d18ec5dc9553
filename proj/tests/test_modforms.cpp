#include <doctest.h>

#include "oracle.hpp"
#include "qseries/catalog.hpp"
#include "qseries/modforms.hpp"

using namespace qseries;

TEST_CASE("Eisenstein series against divisor sums")
{
    const FracSeries E4 = eisenstein(4, 40), E6 = eisenstein(6, 40);
    const auto o4 = oracle::e4(40), o6 = oracle::e6(40);
    for (int n = 0; n < 40; ++n) {
        CHECK(E4.coefficient(n) == Cyclotomic(Rational(o4[n])));
        CHECK(E6.coefficient(n) == Cyclotomic(Rational(o6[n])));
    }
    CHECK(E4.weight() == 4);
}

TEST_CASE("J against E4^3 / Delta")
{
    const FracSeries J = jfunction(30);
    const auto c = oracle::jcoeffs(31);
    for (int n = -1; n < 30; ++n) CHECK(J.coefficient(n) == Cyclotomic(Rational(c[n + 1])));
    CHECK(J.coefficient(1) == Cyclotomic(196884));
    CHECK(J.coefficient(2) == Cyclotomic(21493760));
    CHECK(J.coefficient(3) == Cyclotomic(864299970));
    CHECK(J.coefficient(4) == Cyclotomic(Rational("20245856256")));
}

TEST_CASE("Ramanujan tau")
{
    const FracSeries D = catalog_series("Delta", 8);
    const long tau[] = {0, 1, -24, 252, -1472, 4830, -6048, -16744};
    for (int n = 1; n < 8; ++n) CHECK(D.coefficient(n) == Cyclotomic(tau[n]));
    CHECK(D.weight() == 12);
}

TEST_CASE("divisor sums")
{
    CHECK(sigma(1, 12) == 28);
    CHECK(sigma(0, 12) == 6);
    CHECK(sigma(-1, 6) == Rational(2));
    CHECK(sigma(-2, 2) == Rational(5, 4));
    CHECK(std::abs(sigma_complex({1.5, 0}, 4) - std::complex<double>(1 + std::pow(2, 1.5) + 8)) < 1e-12);
}

TEST_CASE("Bernoulli numbers")
{
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(5) == 0);
    CHECK(bernoulli_poly(2, Rational(1, 2)) == Rational(-1, 12));
}

TEST_CASE("eta quotients")
{
    EtaQuotientSpec spec; // (eta(tau)/eta(2tau))^24
    spec.factors = {{Rational(1), 24}, {Rational(2), -24}};
    const FracSeries f = eta_quotient(spec, 4);
    CHECK(f.coefficient(-1) == Cyclotomic(1));
    CHECK(f.coefficient(0) == Cyclotomic(-24));
    CHECK(f.coefficient(1) == Cyclotomic(276));
    CHECK(f.coefficient(2) == Cyclotomic(-2048));
    CHECK(spec.weight() == 0);
    CHECK(spec.leading_exponent() == Rational(-1));
}

TEST_CASE("untwisted sector of the twisted Eisenstein series")
{
    for (int k : {4, 6}) {
        const FracSeries G = twisted_eisenstein(k, 1, 0, 0, 20);
        CHECK(compare_series(G, eisenstein(k, 20) * Cyclotomic(twisted_untwisted_ratio(k))).equal);
    }
    CHECK(twisted_untwisted_ratio(4) == Rational(1, 120));
}

TEST_CASE("twisted Eisenstein series against the lattice sum")
{
    const std::complex<double> tau(0.0, 2.0);
    for (auto [N, i, j] : {std::tuple{3, 1, 2}, std::tuple{4, 0, 1}, std::tuple{4, 3, 0}}) {
        const FracSeries G = twisted_eisenstein(4, N, i, j, 40);
        const auto lattice = twisted_normalization(4) *
                             twisted_eisenstein_numeric(4, std::polar(1.0, 2 * M_PI * i / N),
                                                        std::polar(1.0, 2 * M_PI * j / N), tau, 600);
        CHECK(std::abs(G.evaluate(tau) - lattice) < 1e-6);
    }
}
