#pragma once

// Built-in exact objects: J, the Leech partition function J + 24, E4, E6,
// Delta, the McKay-Thompson series of the Monster classes 2A and 2B, and the
// commuting-pair sectors of <h> for h in {2A, 2B}.
//
// Labels:
//   J Leech E4 E6 Delta 2A 2B
//   pair:<h>:g=1  pair:<h>:g=h  pair:<h>:<i>,<j>   entry (h^i, h^j) of family:<h>
//   family:<h>                                      all four sectors

#include <optional>
#include <string>
#include <vector>

#include "qseries/modforms.hpp"
#include "qseries/orbifold.hpp"
#include "qseries/series.hpp"

namespace qseries {

// A sum of eta quotients.
struct EtaRecipe {
    std::vector<EtaQuotientSpec> terms;
    FracSeries expand(std::int64_t order) const;
};

// Recipes of the McKay-Thompson series T_h (h = "2A", "2B").
const EtaRecipe &mckay_thompson_recipe(const std::string &h);
// Recipe of the twisted sector Z((1,h), tau) as eta quotients in q^(1/2).
const EtaRecipe &twisted_sector_recipe(const std::string &h);

bool catalog_has(const std::string &label);
bool catalog_is_family(const std::string &label);
std::vector<std::string> catalog_labels();
std::optional<bool> catalog_fricke(const std::string &label);

// Exponents < order. Throws PreconditionError for unknown labels or orders
// outside [0, kMaxCatalogOrder].
inline constexpr std::int64_t kMaxCatalogOrder = 100000;
FracSeries catalog_series(const std::string &label, std::int64_t order);
TraceFamily catalog_family(const std::string &label, std::int64_t order);

} // namespace qseries
