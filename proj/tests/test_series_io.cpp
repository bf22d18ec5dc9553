#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qseries/catalog.hpp"
#include "qseries/errors.hpp"
#include "qseries/series_io.hpp"
#include "synthetic.hpp"

using namespace qseries;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / ("qseries_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path &p, const std::string &text)
{
    std::ofstream(p, std::ios::binary) << text;
}

} // namespace

TEST_CASE("3A oracle values")
{
    const FracSeries T = t3a(4);
    CHECK(T.coefficient(-1) == Cyclotomic(1));
    CHECK(T.coefficient(0) == Cyclotomic(0));
    CHECK(T.coefficient(1) == Cyclotomic(783));
    CHECK(T.coefficient(2) == Cyclotomic(8672));
    CHECK(T.coefficient(3) == Cyclotomic(65367));
}

TEST_CASE("format is canonical")
{
    const std::string text = format_series("J", catalog_series("J", 3));
    CHECK(text ==
          "object J\nweight 0\ngrading 1\ncyclotomic 1\ntruncation 3\ncoeff -1 1\ncoeff 1 196884\ncoeff 2 21493760\n");
    CHECK(format_series(parse_series(text)) == text);
}

TEST_CASE("cyclotomic coefficients round trip")
{
    const FracSeries f = mobius_substitute(catalog_series("J", 6), 1, 1, 3);
    const std::string text = format_series("shifted", f);
    const SeriesFile back = parse_series(text);
    CHECK(compare_series(back.series, f).equal);
    CHECK(format_series(back) == text);
    CHECK(text.find("cyclotomic 3\n") != std::string::npos);
}

TEST_CASE("malformed input")
{
    const std::string good = "object x\nweight 0\ngrading 1\ncyclotomic 1\ntruncation 3\ncoeff -1 1\ncoeff 1 5\n";
    CHECK_NOTHROW(parse_series(good));
    auto expect_parse_error = [](const std::string &text, std::size_t line) {
        try {
            (void)parse_series(text);
            FAIL("accepted: " << text);
        } catch (const ParseError &e) {
            CHECK(e.line() == line);
        }
    };
    expect_parse_error("object x\nweight 0\ngrading 1\ncyclotomic 1\ntruncation 3\ncoeff 1 2/4\n", 6);
    expect_parse_error("object x\nweight 0\ngrading 1\ncyclotomic 1\ntruncation 3\ncoeff 1 5\ncoeff 1 6\n", 7);
    expect_parse_error("object x\nweight 0\ngrading 1\ncyclotomic 1\ntruncation 3\ncoeff 5 1\n", 6);
    expect_parse_error("object x\nweight 0\ngrading 1\ncyclotomic 4\ntruncation 3\ncoeff 1 5\n", 4);
    expect_parse_error("object x\ngrading 1\nweight 0\ncyclotomic 1\ntruncation 3\n", 2);
    expect_parse_error("object x\nweight 0\ngrading 1\ncyclotomic 1\ntruncation 3", 5);
}

TEST_CASE("synthetic family round trip")
{
    const TraceFamily fam = synthetic_3a_family(120);
    const fs::path dir = fresh_dir("roundtrip");
    save_family_dir(dir, fam);
    const LoadedCatalog cat = load_catalog_dir(dir);
    REQUIRE(cat.families.count("family:3A") == 1);
    const TraceFamily &back = cat.families.at("family:3A");
    CHECK(back.entries().size() == 9);
    for (const auto &[pair, f] : fam.entries()) CHECK(compare_series(back.at(pair.first, pair.second), f).equal);
    CHECK(back.fricke({1}) == std::optional<bool>(true));

    const fs::path again = fresh_dir("roundtrip2");
    save_family_dir(again, back);
    for (const auto &e : fs::directory_iterator(dir)) CHECK(slurp(e.path()) == slurp(again / e.path().filename()));

    for (const Check &c : trace_t_consistency(back, "3A")) CHECK(c.status == Status::Pass);
    for (const Check &c : trace_s_consistency(back, "3A")) CHECK(c.status == Status::Pass);
    for (int n : {2, 3}) {
        for (const Check &c : gen_replication_check(back, {0}, {1}, n, "3A")) CHECK(c.status == Status::Pass);
    }
}

TEST_CASE("loader rejects a non-reduced rational")
{
    const fs::path dir = fresh_dir("nonreduced");
    save_family_dir(dir, synthetic_3a_family(6));
    const fs::path victim = dir / "family_3A.0.1.series";
    REQUIRE(fs::exists(victim));
    std::string text = slurp(victim);
    const auto pos = text.find("coeff 2 ");
    REQUIRE(pos != std::string::npos);
    const auto end = text.find('\n', pos);
    text.replace(pos, end - pos, "coeff 2 1566/2");
    spit(victim, text);
    CHECK_THROWS_WITH_AS(load_catalog_dir(dir), doctest::Contains("non-reduced"), ParseError);
}

TEST_CASE("loader rejects a T-inconsistent family and names the pair")
{
    TraceFamily fam = synthetic_3a_family(6);
    fam.set({1}, {1}, fam.at({0}, {1}));
    const fs::path dir = fresh_dir("inconsistent");
    save_family_dir(dir, fam);
    try {
        (void)load_catalog_dir(dir);
        FAIL("accepted an inconsistent family");
    } catch (const InvariantError &e) {
        CHECK(e.invariant() == "T-consistency");
        CHECK(std::string(e.what()).find("(1,1)") != std::string::npos);
    }
}

TEST_CASE("anomalous declarations are rejected")
{
    const std::string text = "object f\ngroup 3\npair 0 1\nanomaly-free no\nweight 0\ngrading 3\ncyclotomic 1\n"
                             "truncation 3\ncoeff -1 1\n";
    CHECK_THROWS_AS(parse_series(text), InvariantError);
}

TEST_CASE("unreadable files")
{
    CHECK_THROWS_AS(load_series("/nonexistent/file.series"), IoError);
    CHECK_THROWS_AS(load_catalog_dir("/nonexistent-dir"), IoError);
}
