#include <doctest.h>

#include <json.hpp>

#include "qseries/errors.hpp"
#include "qseries/report.hpp"
#include "qseries/verify.hpp"

using namespace qseries;

namespace {

Check make(std::string id, Status s)
{
    Check c;
    c.id = std::move(id);
    c.description = "d";
    c.status = s;
    c.conclusive_range = "r";
    return c;
}

} // namespace

TEST_CASE("reports are sorted and reject duplicates")
{
    const Report r = make_report("x", {make("b", Status::Pass), make("a", Status::Inconclusive)});
    CHECK(r.checks.front().id == "a");
    CHECK(r.passed());
    CHECK_THROWS(make_report("x", {make("a", Status::Pass), make("a", Status::Pass)}));
    const Report f = make_report("x", {make("a", Status::Inconclusive), make("b", Status::Fail)});
    CHECK_FALSE(f.passed());
}

TEST_CASE("JSON layout")
{
    Check c = make("a", Status::Pass);
    c.max_numeric_error = 1e-13;
    const auto j = nlohmann::json::parse(report_json(make_report("s", {c, make("b", Status::Fail)}), "T"));
    CHECK(j["suite"] == "s");
    CHECK(j["timestamp"] == "T");
    CHECK(j["summary"]["pass"] == 1);
    CHECK(j["summary"]["fail"] == 1);
    CHECK(j["checks"][0]["status"] == "pass");
    CHECK(j["checks"][0].contains("max_numeric_error"));
    CHECK_FALSE(j["checks"][1].contains("max_numeric_error"));
}

TEST_CASE("suites are deterministic across thread counts")
{
    for (const std::string suite : {"faber", "catalog", "sigma"}) {
        VerifyOptions one, many;
        many.threads = 4;
        const Report a = run_suite(suite, one), b = run_suite(suite, many);
        CHECK(report_json(a, "T") == report_json(b, "T"));
        CHECK(a.passed());
    }
}

TEST_CASE("suite names")
{
    CHECK(suite_names().size() == 10);
    CHECK(is_suite("all"));
    CHECK_FALSE(is_suite("nope"));
    CHECK_THROWS_AS(run_suite("nope"), PreconditionError);
}
