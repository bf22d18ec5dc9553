#include "qseries/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qseries {

std::size_t Report::count(Status s) const
{
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [s](const Check &c) { return c.status == s; }));
}

Report make_report(std::string suite, std::vector<Check> checks)
{
    std::sort(checks.begin(), checks.end(), [](const Check &a, const Check &b) { return a.id < b.id; });
    for (std::size_t i = 1; i < checks.size(); ++i) {
        if (checks[i].id == checks[i - 1].id) throw std::logic_error("duplicate check id " + checks[i].id);
    }
    return Report{std::move(suite), std::move(checks)};
}

std::string report_json(const Report &report, const std::string &timestamp)
{
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["timestamp"] = timestamp;
    j["summary"] = {{"pass", report.count(Status::Pass)},
                    {"fail", report.count(Status::Fail)},
                    {"inconclusive", report.count(Status::Inconclusive)}};
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Check &c : report.checks) {
        nlohmann::ordered_json o;
        o["id"] = c.id;
        o["description"] = c.description;
        o["status"] = status_name(c.status);
        o["conclusive_range"] = c.conclusive_range;
        if (c.max_numeric_error) o["max_numeric_error"] = *c.max_numeric_error;
        o["detail"] = c.detail;
        arr.push_back(std::move(o));
    }
    j["checks"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string report_text(const Report &report)
{
    std::ostringstream out;
    for (const Check &c : report.checks) {
        out << status_name(c.status) << "  " << c.id << "  [" << c.conclusive_range << "]  " << c.detail << '\n';
    }
    out << "suite " << report.suite << ": " << report.count(Status::Pass) << " pass, " << report.count(Status::Fail)
        << " fail, " << report.count(Status::Inconclusive) << " inconclusive\n";
    return out.str();
}

std::string utc_timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace qseries
