#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qseries/report.hpp"
#include "qseries/series_io.hpp"

namespace qseries {

struct VerifyOptions {
    std::optional<std::int64_t> order; // q-order of the identity checks (suite-specific default)
    std::optional<int> p_order;        // p-order of two-variable checks
    unsigned threads = 1;
    const LoadedCatalog *catalog = nullptr; // externally supplied families, checked in gen-moonshine
};

std::vector<std::string> suite_names(); // without "all"
bool is_suite(const std::string &name);  // including "all"

// Runs the suite; independent checks run on up to options.threads threads.
// The report depends only on the suite and the options, never on the thread count.
Report run_suite(const std::string &suite, const VerifyOptions &options = {});

} // namespace qseries
