#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qseries/check.hpp"

namespace qseries {

struct Report {
    std::string suite;
    std::vector<Check> checks; // sorted by id

    std::size_t count(Status s) const;
    bool passed() const { return count(Status::Fail) == 0; }
};

// Checks sorted by id; duplicate ids are an error.
Report make_report(std::string suite, std::vector<Check> checks);

// JSON with keys in fixed order. Everything except "timestamp" depends only on the checks.
std::string report_json(const Report &report, const std::string &timestamp);
std::string report_text(const Report &report);
std::string utc_timestamp();

} // namespace qseries
