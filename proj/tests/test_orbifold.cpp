#include <doctest.h>

#include "qseries/catalog.hpp"
#include "qseries/errors.hpp"
#include "qseries/hecke.hpp"
#include "qseries/orbifold.hpp"

using namespace qseries;

TEST_CASE("abelian groups")
{
    const AbelianGroup G({2, 4});
    CHECK(G.size() == 8);
    CHECK(G.order_of({1, 1}) == 4);
    CHECK(G.mul({1, 3}, {1, 2}) == AbelianGroup::Element{0, 1});
    CHECK(G.inverse({1, 1}) == AbelianGroup::Element{1, 3});
    CHECK(G.element_string({1, 3}) == "1,3");
    CHECK(G.parse_element("1,3") == AbelianGroup::Element{1, 3});
    CHECK_THROWS(G.parse_element("2,3"));
    CHECK_THROWS(AbelianGroup({2, 3}));
    CHECK(G.elements().size() == 8);
}

TEST_CASE("partitions and centralizers")
{
    const auto p = partitions(4);
    CHECK(p.size() == 5);
    Rational total = 0;
    for (const CycleType &c : p) total += Rational(Integer(1), c.centralizer_order());
    CHECK(total == 1); // sum over classes of 1/|C(g)| = 1
    CHECK(partitions(6).size() == 11);
}

TEST_CASE("S2 orbifold of J")
{
    const FracSeries J = catalog_series("J", 20);
    // T(2)J = (1/2)(J(2tau) + J(tau/2) + J((tau+1)/2))
    const FracSeries want = J * J * Cyclotomic(Rational(1, 2)) + hecke_classical(0, 2, J);
    CHECK(compare_series(perm_orbifold(J, 2), want).equal);
    CHECK(perm_orbifold(J, 2).coefficient(-2) == Cyclotomic(1));
    CHECK(perm_orbifold(J, 2).coefficient(0) == Cyclotomic(196884));
}

TEST_CASE("generating function and denominator product")
{
    const std::int64_t order = perm_generating_required_order(4, Rational(4));
    const FracSeries J = catalog_series("J", order);
    const PermGenerating g = perm_generating(J, 4, Rational(4), true);
    CHECK(compare_biseries(g.exp_form, g.product_form).equal);
    CHECK(compare_biseries(g.exp_form, *g.closed_form).equal);
    const BiSeries d = denominator_product(J, 4, Rational(4), 1);
    CHECK(compare_biseries(d, denominator_difference(J).truncated(5).q_truncated_at(Rational(5))).equal);
}

TEST_CASE("catalog families")
{
    for (const std::string h : {"2A", "2B"}) {
        const TraceFamily fam = catalog_family("family:" + h, 24);
        for (const Check &c : trace_t_consistency(fam, h)) CHECK(c.status == Status::Pass);
        for (const Check &c : trace_s_consistency(fam, h)) CHECK(c.status == Status::Pass);
    }
    const FracSeries orbA = g_orbifold_partition(catalog_family("family:2A", 10));
    const FracSeries orbB = g_orbifold_partition(catalog_family("family:2B", 10));
    CHECK(compare_series(orbA, catalog_series("J", 10)).equal);
    CHECK(compare_series(orbB, catalog_series("Leech", 10)).equal);
}

TEST_CASE("twisted sector of 2B")
{
    // 24 + 4096 (eta(tau)/eta(tau/2))^24
    const FracSeries z = catalog_series("pair:2B:0,1", 4);
    const long want[] = {24, 4096, 98304, 1228800, 10747904, 74244096, 432144384};
    CHECK(z.grading() == 2);
    for (int n = 0; n < 7; ++n) CHECK(z.coefficient(n) == Cyclotomic(want[n]));
    CHECK_THROWS_AS(fricke_twisted_sector(catalog_series("2B", 4), 2, false), PreconditionError);
}

TEST_CASE("generalized replication for 2A")
{
    const TraceFamily fam = catalog_family("family:2A", 48);
    for (int g : {0, 1}) {
        for (int n = 1; n <= 4; ++n) {
            for (const Check &c : gen_replication_check(fam, {g}, {1}, n, "2A")) CHECK(c.status == Status::Pass);
        }
    }
}

TEST_CASE("twisted generating function of 2A")
{
    const TraceFamily fam = catalog_family("family:2A", 40);
    const auto g = perm_generating_twisted(fam, {0}, {1}, Rational(3, 2), Rational(8));
    REQUIRE(g.closed_form);
    CHECK(compare_biseries(g.exp_form, *g.closed_form).equal);
    for (int n = 1; n <= 3; ++n) {
        CHECK(compare_series(perm_orbifold_twisted(fam, {0}, {1}, n), g.exp_form.coefficient(n)).equal);
    }
}

TEST_CASE("missing entries are named")
{
    TraceFamily fam("partial", AbelianGroup({2}));
    fam.set({0}, {0}, catalog_series("J", 4));
    CHECK_THROWS_WITH_AS(fam.at({1}, {1}), doctest::Contains("(1,1)"), PreconditionError);
}
