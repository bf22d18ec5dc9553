#include "qseries/check.hpp"

#include <cstdio>

namespace qseries {

std::string status_name(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Check series_check(std::string id, std::string description, const FracSeries &lhs, const FracSeries &rhs)
{
    Check c;
    c.id = std::move(id);
    c.description = std::move(description);
    const SeriesComparison cmp = compare_series(lhs, rhs);
    c.conclusive_range = cmp.range_string();
    if (!cmp.equal) {
        const std::int64_t n = *cmp.first_mismatch;
        const FracSeries a = lhs.regraded(cmp.grading), b = rhs.regraded(cmp.grading);
        c.status = Status::Fail;
        c.detail = "first mismatch at " + exponent_string(n, cmp.grading) + ": " + a.coefficient(n).to_string() +
                   " vs " + b.coefficient(n).to_string();
        return c;
    }
    const auto lv = lhs.regraded(cmp.grading).valuation();
    const auto rv = rhs.regraded(cmp.grading).valuation();
    const bool any = (lv && *lv < cmp.conclusive_high) || (rv && *rv < cmp.conclusive_high);
    c.status = any ? Status::Pass : Status::Inconclusive;
    c.detail = any ? "exact agreement" : "no nonzero coefficient inside the known range";
    return c;
}

Check biseries_check(std::string id, std::string description, const BiSeries &lhs, const BiSeries &rhs)
{
    Check c;
    c.id = std::move(id);
    c.description = std::move(description);
    const BiComparison cmp = compare_biseries(lhs, rhs);
    c.conclusive_range = cmp.range_string();
    if (!cmp.equal) {
        c.status = Status::Fail;
        c.detail = cmp.mismatch_string();
        return c;
    }
    const bool any = !lhs.coefficients().empty() || !rhs.coefficients().empty();
    c.status = any ? Status::Pass : Status::Inconclusive;
    c.detail = any ? "exact agreement" : "both sides empty";
    return c;
}

Check numeric_check(std::string id, std::string description, double error, double tolerance, std::string range,
                    std::string detail)
{
    Check c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.conclusive_range = std::move(range);
    c.max_numeric_error = error;
    c.status = error <= tolerance ? Status::Pass : Status::Fail;
    char buf[96];
    std::snprintf(buf, sizeof buf, "error %.3e (tolerance %.1e)", error, tolerance);
    c.detail = detail.empty() ? std::string(buf) : detail + "; " + buf;
    return c;
}

Check bool_check(std::string id, std::string description, bool ok, std::string range, std::string detail)
{
    Check c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.status = ok ? Status::Pass : Status::Fail;
    c.conclusive_range = std::move(range);
    c.detail = std::move(detail);
    return c;
}

} // namespace qseries
