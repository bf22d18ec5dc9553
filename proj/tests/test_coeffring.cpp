#include <doctest.h>

#include "qseries/coeffring.hpp"
#include "qseries/errors.hpp"

using namespace qseries;

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic_polynomial(1) == std::vector<std::int64_t>{-1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<std::int64_t>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<std::int64_t>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
    CHECK(euler_phi(12) == 4);
    CHECK(divisors(12) == std::vector<unsigned>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("roots of unity")
{
    const Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
    CHECK(i * i == Cyclotomic(-1));
    CHECK((i * i).is_rational());
    const Cyclotomic w = Cyclotomic::root_of_unity(3, 1);
    CHECK(w + w * w == Cyclotomic(-1));
    CHECK(Cyclotomic::root_of_unity(6, 2) == w);
    CHECK(Cyclotomic::root_of_unity(5, -1) == Cyclotomic::root_of_unity(5, 4));
    CHECK(Cyclotomic::root_of_unity(7, 7) == Cyclotomic(1));
}

TEST_CASE("mixed orders promote to the lcm")
{
    const Cyclotomic a = Cyclotomic::root_of_unity(4, 1) + Cyclotomic::root_of_unity(3, 1);
    CHECK(a.order() == 12);
    CHECK(a - Cyclotomic::root_of_unity(3, 1) == Cyclotomic::root_of_unity(4, 1));
    CHECK((a - Cyclotomic::root_of_unity(3, 1)).simplified().order() == 4);
}

TEST_CASE("inverse")
{
    const Cyclotomic z = Cyclotomic::root_of_unity(5, 1);
    const Cyclotomic a = Cyclotomic(1) + Cyclotomic(2) * z - Cyclotomic(Rational(3, 7)) * z * z * z;
    CHECK(a * a.inverse() == Cyclotomic(1));
    CHECK(a / a == Cyclotomic(1));
    CHECK_THROWS_AS(Cyclotomic(0).inverse(), DivisionByZero);
}

TEST_CASE("complex embedding")
{
    const auto v = Cyclotomic::root_of_unity(8, 1).embed_complex();
    CHECK(v.real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(v.imag() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("canonical text round trip")
{
    const Cyclotomic z = Cyclotomic::root_of_unity(12, 1);
    const Cyclotomic a = Cyclotomic(Rational(-1, 2)) + Cyclotomic(3) * z * z * z;
    const std::string s = a.to_string(12);
    CHECK(Cyclotomic::parse(s, 12) == a);
    CHECK(Cyclotomic(Rational(6, 4)).to_string() == "3/2");
    CHECK(Cyclotomic(0).to_string() == "0");
    CHECK_THROWS(Cyclotomic::parse("2/4", 1));
    CHECK_THROWS(Cyclotomic::parse("1 + 0*z^1", 4));
    CHECK_THROWS(Cyclotomic::parse("z^2", 4));
}

TEST_CASE("canonical rationals")
{
    CHECK(ratio(-2, 2) == Rational(-1));
    CHECK(ratio(4, -6).get_den() == 3);
    CHECK(ratio(4, -6).get_num() == -2);
    CHECK(parse_rational("-10/4") == Rational(-5, 2));
    CHECK(floor_div(-7, 2) == -4);
    CHECK(mod_floor(-7, 2) == 1);
}
