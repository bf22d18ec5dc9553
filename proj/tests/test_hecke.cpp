#include <doctest.h>

#include "oracle.hpp"
#include "qseries/catalog.hpp"
#include "qseries/hecke.hpp"
#include "qseries/modforms.hpp"

using namespace qseries;

TEST_CASE("classical Hecke operator against the divisor formula")
{
    const auto c = oracle::jcoeffs(80);
    const FracSeries J = catalog_series("J", 79);
    for (int n : {2, 3, 4, 6}) {
        const FracSeries T = hecke_classical(0, n, J);
        for (std::int64_t m = -n; m < 10; ++m) {
            const auto want = oracle::hecke_coefficient(0, n, m, [&](std::int64_t e) {
                return e < -1 ? oracle::Z(0) : c[static_cast<std::size_t>(e + 1)];
            });
            CHECK(T.coefficient(m) == Cyclotomic(want));
        }
        CHECK(compare_series(T, hecke_divisor_form(0, n, J)).equal);
    }
}

TEST_CASE("weight k Hecke operator on E4")
{
    const FracSeries E = eisenstein(4, 60);
    const FracSeries T = hecke_classical(4, 5, E);
    CHECK(compare_series(T, eisenstein(4, 12) * Cyclotomic(126)).equal);
}

TEST_CASE("replication and algebra")
{
    const FracSeries J = catalog_series("J", 160);
    for (int n = 1; n <= 10; ++n) CHECK(replication_check(J, n, "J").status == Status::Pass);
    const auto checks = verify_hecke_algebra_classical(catalog_series("E6", 300), "E6", 6, {2}, 2);
    CHECK_FALSE(checks.empty());
    for (const Check &c : checks) CHECK(c.status == Status::Pass);
}

TEST_CASE("twisted Hecke operators on the N = 3 family")
{
    const TwistedFamily fam = twisted_eisenstein_family(4, 3, 90);
    const TwistedFamily T2 = hecke_twisted(fam, 2), R2 = homothety(fam, 2);
    for (const auto &[idx, f] : fam.entries()) {
        const FracSeries rhs = f * Cyclotomic(8) + R2.at(idx.first, idx.second);
        CHECK(compare_series(T2.at(idx.first, idx.second), rhs).equal);
    }
    CHECK(compare_series(R2.at(1, 2), fam.at(2, 1)).equal);
    for (const Check &c : twisted_t_consistency(fam, "N3")) CHECK(c.status == Status::Pass);
    for (const Check &c : twisted_s_consistency(fam, "N3")) CHECK(c.status == Status::Pass);
}

TEST_CASE("a broken family fails T-consistency")
{
    TwistedFamily fam = twisted_eisenstein_family(4, 3, 30);
    fam.set(1, 1, fam.at(1, 1) + FracSeries::monomial(1, 1, 3, 30, 4));
    bool failed = false;
    for (const Check &c : twisted_t_consistency(fam, "N3")) failed = failed || c.status == Status::Fail;
    CHECK(failed);
}
