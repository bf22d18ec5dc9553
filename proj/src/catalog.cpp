#include "qseries/catalog.hpp"

#include <map>
#include <mutex>

#include "qseries/errors.hpp"

namespace qseries {

FracSeries EtaRecipe::expand(std::int64_t order) const
{
    FracSeries sum;
    for (const auto &t : terms) sum += eta_quotient(t, order);
    return sum;
}

const EtaRecipe &mckay_thompson_recipe(const std::string &h)
{
    // T_2B = (eta(tau)/eta(2tau))^24 + 24, T_2A = T_2B + 4096 (eta(2tau)/eta(tau))^24
    static const EtaRecipe r2b{{{{{Rational(1), 24}, {Rational(2), -24}}, Rational(24), Rational(1), std::nullopt}}};
    static const EtaRecipe r2a{{{{{Rational(1), 24}, {Rational(2), -24}}, Rational(24), Rational(1), std::nullopt},
                                {{{Rational(2), 24}, {Rational(1), -24}}, Rational(0), Rational(4096), std::nullopt}}};
    if (h == "2A") return r2a;
    if (h == "2B") return r2b;
    throw PreconditionError("no McKay-Thompson recipe for class '" + h + "'");
}

const EtaRecipe &twisted_sector_recipe(const std::string &h)
{
    // S-transforms of the recipes above: eta(-1/tau)/eta(-1/(2tau)) = 2^(-1/2) eta(tau)/eta(tau/2)
    static const EtaRecipe r2b{{{{{Rational(1), 24}, {Rational(1, 2), -24}}, Rational(24), Rational(4096), 2}}};
    static const EtaRecipe r2a{{{{{Rational(1), 24}, {Rational(1, 2), -24}}, Rational(24), Rational(4096), 2},
                                {{{Rational(1, 2), 24}, {Rational(1), -24}}, Rational(0), Rational(1), 2}}};
    if (h == "2A") return r2a;
    if (h == "2B") return r2b;
    throw PreconditionError("no twisted-sector recipe for class '" + h + "'");
}

namespace {

const std::vector<std::string> kClasses{"2A", "2B"};

bool is_class(const std::string &h)
{
    return h == "2A" || h == "2B";
}

struct PairLabel {
    std::string h;
    int i = 0, j = 0;
};

std::optional<PairLabel> parse_pair_label(const std::string &label)
{
    if (label.rfind("pair:", 0) != 0) return std::nullopt;
    const std::size_t colon = label.find(':', 5);
    if (colon == std::string::npos) return std::nullopt;
    PairLabel p;
    p.h = label.substr(5, colon - 5);
    if (!is_class(p.h)) return std::nullopt;
    const std::string rest = label.substr(colon + 1);
    if (rest == "g=1") {
        p.i = 0, p.j = 1;
    } else if (rest == "g=h") {
        p.i = 1, p.j = 1;
    } else if (rest.size() == 3 && rest[1] == ',' && (rest[0] == '0' || rest[0] == '1') &&
               (rest[2] == '0' || rest[2] == '1')) {
        p.i = rest[0] - '0', p.j = rest[2] - '0';
    } else {
        return std::nullopt;
    }
    return p;
}

void check_order(std::int64_t order)
{
    if (order < 0 || order > kMaxCatalogOrder) {
        throw PreconditionError("catalog order must lie in [0, " + std::to_string(kMaxCatalogOrder) + "]");
    }
}

// Base objects computed at the largest order requested so far; lower orders are truncations.
class SeriesCache {
public:
    template <class Make>
    FracSeries get(const std::string &key, std::int64_t order, Make &&make)
    {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            const auto it = cache_.find(key);
            if (it != cache_.end() && it->second.first >= order) return it->second.second.truncated_at(Rational(order));
        }
        FracSeries f = make(order);
        std::lock_guard<std::mutex> lock(mutex_);
        auto &slot = cache_[key];
        if (slot.first < order || slot.second.is_zero()) slot = {order, f};
        return f;
    }

private:
    std::mutex mutex_;
    std::map<std::string, std::pair<std::int64_t, FracSeries>> cache_;
};

SeriesCache &cache()
{
    static SeriesCache c;
    return c;
}

FracSeries base_series(const std::string &label, std::int64_t order)
{
    if (label == "J") return cache().get(label, order, jfunction);
    if (label == "Leech") return base_series("J", order) + FracSeries::constant(24);
    if (label == "E4") return cache().get(label, order, [](std::int64_t o) { return eisenstein(4, o); });
    if (label == "E6") return cache().get(label, order, [](std::int64_t o) { return eisenstein(6, o); });
    if (label == "Delta") {
        return cache().get(label, order, [](std::int64_t o) {
            return eta_quotient({{{Rational(1), 24}}, Rational(0), Rational(1), std::nullopt}, o);
        });
    }
    if (is_class(label)) {
        return cache().get(label, order, [&](std::int64_t o) { return mckay_thompson_recipe(label).expand(o); });
    }
    throw PreconditionError("unknown catalog label '" + label + "'");
}

FracSeries sector(const std::string &h, int i, int j, std::int64_t order)
{
    if (i == 0 && j == 0) return base_series("J", order);
    if (j == 0) return base_series(h, order);
    const FracSeries z = cache().get("pair:" + h + ":0,1", order,
                                     [&](std::int64_t o) { return twisted_sector_recipe(h).expand(o); });
    return i == 0 ? z : mobius_substitute(z, 1, -1, 1);
}

} // namespace

bool catalog_has(const std::string &label)
{
    for (const char *s : {"J", "Leech", "E4", "E6", "Delta"}) {
        if (label == s) return true;
    }
    if (is_class(label)) return true;
    if (parse_pair_label(label)) return true;
    return catalog_is_family(label);
}

bool catalog_is_family(const std::string &label)
{
    return label.rfind("family:", 0) == 0 && is_class(label.substr(7));
}

std::vector<std::string> catalog_labels()
{
    std::vector<std::string> out{"J", "Leech", "E4", "E6", "Delta"};
    for (const auto &h : kClasses) {
        out.push_back(h);
        out.push_back("pair:" + h + ":g=1");
        out.push_back("pair:" + h + ":g=h");
        out.push_back("family:" + h);
    }
    return out;
}

std::optional<bool> catalog_fricke(const std::string &label)
{
    std::string h = label;
    if (const auto p = parse_pair_label(label)) h = p->h;
    if (catalog_is_family(label)) h = label.substr(7);
    if (h == "2A") return true;
    if (h == "2B") return false;
    return std::nullopt;
}

FracSeries catalog_series(const std::string &label, std::int64_t order)
{
    check_order(order);
    if (const auto p = parse_pair_label(label)) return sector(p->h, p->i, p->j, order);
    if (catalog_is_family(label)) throw PreconditionError("'" + label + "' is a family, not a single series");
    return base_series(label, order);
}

TraceFamily catalog_family(const std::string &label, std::int64_t order)
{
    check_order(order);
    if (!catalog_is_family(label)) throw PreconditionError("unknown catalog family '" + label + "'");
    const std::string h = label.substr(7);
    TraceFamily fam(label, AbelianGroup({2}));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) fam.set({i}, {j}, sector(h, i, j, order));
    }
    fam.set_fricke({0}, true);
    fam.set_fricke({1}, h == "2A");
    return fam;
}

} // namespace qseries
