#pragma once

// Line-oriented series text format:
//
//   object <label>
//   group <invariant factors>          (family entries only)
//   pair <g> <h>                       elements as comma-separated exponents
//   fricke yes|no                      Fricke declaration for h
//   anomaly-free yes|no
//   weight <k>
//   grading <m>
//   cyclotomic <N>                     smallest field containing every coefficient
//   truncation <numerator>|exact       coefficients with numerator >= bound are unknown
//   coeff <numerator> <expr>           strictly increasing, nonzero, exponent numerator/m
//
// format_series is canonical: parse followed by format reproduces the input bytes.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "qseries/orbifold.hpp"
#include "qseries/series.hpp"

namespace qseries {

struct SeriesFile {
    std::string object;
    std::optional<AbelianGroup> group;
    std::optional<std::pair<AbelianGroup::Element, AbelianGroup::Element>> pair;
    std::optional<bool> fricke;
    std::optional<bool> anomaly_free;
    FracSeries series;
};

std::string format_series(const SeriesFile &file);
std::string format_series(const std::string &object, const FracSeries &series);

// Throws ParseError (line, column) for malformed text and InvariantError for
// well-formed files that violate a declared invariant.
SeriesFile parse_series(std::string_view text);

SeriesFile load_series(const std::filesystem::path &path); // IoError when unreadable
void save_series(const std::filesystem::path &path, const SeriesFile &file);

struct LoadedCatalog {
    std::map<std::string, FracSeries> series;
    std::map<std::string, TraceFamily> families;
};

// Loads every *.series file of a directory (sorted by name); pair files are
// grouped into families by object label and admitted only if T-consistent.
LoadedCatalog load_catalog_dir(const std::filesystem::path &dir);
// One file per pair, named <label>.<g>.<h>.series with ':' and ',' replaced by '_'.
void save_family_dir(const std::filesystem::path &dir, const TraceFamily &family);

} // namespace qseries
