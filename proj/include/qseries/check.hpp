#pragma once

#include <optional>
#include <string>

#include "qseries/biseries.hpp"
#include "qseries/series.hpp"

namespace qseries {

enum class Status { Pass, Fail, Inconclusive };

std::string status_name(Status s);

// One verified identity. conclusive_range says over which exponents the
// comparison was decisive; a pass says nothing beyond it.
struct Check {
    std::string id;
    std::string description;
    Status status = Status::Inconclusive;
    std::string conclusive_range;
    std::optional<double> max_numeric_error;
    std::string detail;
};

// Exact comparison of two series as a check; an empty conclusive range is inconclusive.
Check series_check(std::string id, std::string description, const FracSeries &lhs, const FracSeries &rhs);
Check biseries_check(std::string id, std::string description, const BiSeries &lhs, const BiSeries &rhs);
Check numeric_check(std::string id, std::string description, double error, double tolerance, std::string range,
                    std::string detail = "");
Check bool_check(std::string id, std::string description, bool ok, std::string range, std::string detail);

} // namespace qseries
