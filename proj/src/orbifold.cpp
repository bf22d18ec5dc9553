#include "qseries/orbifold.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "qseries/errors.hpp"
#include "qseries/faber.hpp"
#include "qseries/hecke.hpp"

namespace qseries {

namespace {

std::vector<std::pair<int, int>> factor_pairs(int n)
{
    std::vector<std::pair<int, int>> out;
    for (int a = 1; a <= n; ++a) {
        if (n % a == 0) out.emplace_back(a, n / a);
    }
    return out;
}

Integer factorial(int n)
{
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

std::int64_t through_high(const Rational &bound, int grading)
{
    Rational x = bound * grading;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return fl.get_si() + 1;
}

std::int64_t ceil_rational(const Rational &x)
{
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return c.get_si();
}

Integer integer_exponent(const Cyclotomic &c, const std::string &what)
{
    if (!c.is_rational()) throw PreconditionError(what + " is not rational");
    const Rational r = c.to_rational();
    if (r.get_den() != 1) throw PreconditionError(what + " is not an integer");
    return r.get_num();
}

// Factor (1 - p^(r/m) q^(s/m'))^e of a product expansion.
struct ProductFactor {
    std::int64_t r;
    std::int64_t s;
    Integer e;
};

// Expands prod (1 - p^r q^s)^e over rows 0 .. P-1. Every factor with s < S is
// present; row j is reported as known for q-numerators below
// ceil(S + mu (j - 1)), mu = min(0, min s/r over the factors).
BiSeries expand_product(const std::vector<ProductFactor> &factors, int p_grading, int q_grading, std::int64_t P,
                        std::int64_t S)
{
    Rational mu = 0;
    for (const auto &f : factors) {
        if (f.e == 0) continue;
        mu = std::min(mu, ratio(f.s, f.r));
    }
    const std::int64_t lo = P > 1 ? std::min<std::int64_t>(0, -ceil_rational(-mu * (P - 1))) : 0;
    const std::int64_t width = S - lo;
    std::vector<std::vector<Integer>> grid(static_cast<std::size_t>(P),
                                           std::vector<Integer>(static_cast<std::size_t>(std::max<std::int64_t>(width, 0))));
    if (width > 0 && -lo < width) grid[0][static_cast<std::size_t>(-lo)] = 1;
    for (const auto &f : factors) {
        if (f.e == 0 || f.r >= P) continue;
        const bool neg = f.e < 0;
        const Integer e = neg ? Integer(-f.e) : f.e;
        const std::int64_t tmax = (P - 1) / f.r;
        std::vector<Integer> coef(static_cast<std::size_t>(tmax + 1));
        coef[0] = 1;
        for (std::int64_t t = 1; t <= tmax; ++t) {
            if (neg) {
                coef[t] = coef[t - 1] * (e + t - 1) / t;
            } else {
                coef[t] = coef[t - 1] * (e - t + 1) / t;
                coef[t] = -coef[t];
            }
            if (!neg && coef[t] == 0) break;
        }
        for (std::int64_t j = P - 1; j >= f.r; --j) {
            auto &row = grid[static_cast<std::size_t>(j)];
            for (std::int64_t t = 1; t <= tmax && t * f.r <= j; ++t) {
                if (coef[t] == 0) continue;
                const auto &src = grid[static_cast<std::size_t>(j - t * f.r)];
                const std::int64_t shift = t * f.s;
                for (std::int64_t x = 0; x < width; ++x) {
                    const std::int64_t y = x - shift;
                    if (y < 0 || y >= width) continue;
                    if (src[y] != 0) row[static_cast<std::size_t>(x)] += coef[t] * src[y];
                }
            }
        }
    }
    BiSeries out = BiSeries::zero(p_grading, P);
    for (std::int64_t j = 0; j < P; ++j) {
        std::int64_t known = S;
        if (j == 0) known = kExact;
        else if (mu < 0) known = ceil_rational(Rational(S) + mu * (j - 1));
        const std::int64_t top = std::min(known, S);
        std::vector<Cyclotomic> coeffs;
        for (std::int64_t x = 0; x < width && lo + x < top; ++x) coeffs.emplace_back(Rational(grid[j][x]));
        FracSeries row = FracSeries::from_coefficients(q_grading, lo, std::move(coeffs), known);
        if (j == 0) row = FracSeries::constant(1);
        out += BiSeries::monomial(j, row, p_grading, P);
    }
    return out;
}

FracSeries hecke_weight0(const FracSeries &Z, int n)
{
    return n == 1 ? Z : hecke_classical(0, n, Z);
}

void require_weight0_integral_grading(const FracSeries &Z, const char *what)
{
    if (Z.weight() != 0) throw PreconditionError(std::string(what) + " needs a weight 0 series");
    if (Z.grading() != 1) throw PreconditionError(std::string(what) + " needs an integrally graded series");
}

} // namespace

// --- AbelianGroup ---------------------------------------------------------

AbelianGroup::AbelianGroup(std::vector<int> factors) : factors_(std::move(factors))
{
    if (factors_.empty()) factors_ = {1};
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 1) throw PreconditionError("invariant factors must be positive");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0) {
            throw PreconditionError("invariant factors must divide each other in order");
        }
    }
}

std::size_t AbelianGroup::size() const
{
    std::size_t s = 1;
    for (int m : factors_) s *= static_cast<std::size_t>(m);
    return s;
}

AbelianGroup::Element AbelianGroup::normalize(Element e) const
{
    if (e.size() != factors_.size()) {
        throw PreconditionError("element has " + std::to_string(e.size()) + " components, group has " +
                                std::to_string(factors_.size()));
    }
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<int>(mod_floor(e[i], factors_[i]));
    return e;
}

AbelianGroup::Element AbelianGroup::mul(const Element &a, const Element &b) const
{
    Element r = normalize(a);
    const Element bn = normalize(b);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += bn[i];
    return normalize(std::move(r));
}

AbelianGroup::Element AbelianGroup::pow(const Element &a, std::int64_t e) const
{
    Element r = normalize(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<int>(mod_floor(r[i] * mod_floor(e, factors_[i]), factors_[i]));
    return r;
}

int AbelianGroup::order_of(const Element &a) const
{
    const Element n = normalize(a);
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < n.size(); ++i) ord = lcm64(ord, factors_[i] / gcd64(n[i], factors_[i]));
    return static_cast<int>(ord);
}

bool AbelianGroup::is_identity(const Element &a) const
{
    const Element n = normalize(a);
    return std::all_of(n.begin(), n.end(), [](int x) { return x == 0; });
}

std::vector<AbelianGroup::Element> AbelianGroup::elements() const
{
    std::vector<Element> out;
    Element e(factors_.size(), 0);
    for (std::size_t count = 0; count < size(); ++count) {
        out.push_back(e);
        for (std::size_t i = e.size(); i-- > 0;) {
            if (++e[i] < factors_[i]) break;
            e[i] = 0;
        }
    }
    return out;
}

std::string AbelianGroup::element_string(const Element &a) const
{
    const Element n = normalize(a);
    std::string s;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(n[i]);
    }
    return s;
}

AbelianGroup::Element AbelianGroup::parse_element(const std::string &text) const
{
    Element e;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
            throw PreconditionError("malformed group element '" + text + "'");
        }
        const long v = std::stol(part);
        e.push_back(static_cast<int>(v));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (e.size() != factors_.size()) {
        throw PreconditionError("group element '" + text + "' has the wrong number of components");
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] >= factors_[i]) throw PreconditionError("group element '" + text + "' is not reduced");
    }
    return e;
}

std::string AbelianGroup::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(factors_[i]);
    }
    return s;
}

// --- TraceFamily ----------------------------------------------------------

bool TraceFamily::contains(const Element &g, const Element &h) const
{
    return entries_.count({group_.normalize(g), group_.normalize(h)}) != 0;
}

const FracSeries &TraceFamily::at(const Element &g, const Element &h) const
{
    const auto it = entries_.find({group_.normalize(g), group_.normalize(h)});
    if (it == entries_.end()) throw PreconditionError("family is not closed: missing entry " + pair_string(g, h));
    return it->second;
}

void TraceFamily::set(const Element &g, const Element &h, FracSeries f)
{
    if (f.weight() != 0) throw PreconditionError("trace functions have weight 0");
    entries_[{group_.normalize(g), group_.normalize(h)}] = std::move(f);
}

std::optional<bool> TraceFamily::fricke(const Element &h) const
{
    const auto it = fricke_.find(group_.normalize(h));
    if (it == fricke_.end()) return std::nullopt;
    return it->second;
}

std::string TraceFamily::pair_string(const Element &g, const Element &h) const
{
    if (group_.factors().size() == 1) return "(" + group_.element_string(g) + "," + group_.element_string(h) + ")";
    return "([" + group_.element_string(g) + "],[" + group_.element_string(h) + "])";
}

// --- partitions -----------------------------------------------------------

int CycleType::size() const
{
    int n = 0;
    for (std::size_t k = 0; k < multiplicities.size(); ++k) n += static_cast<int>(k + 1) * multiplicities[k];
    return n;
}

Integer CycleType::centralizer_order() const
{
    Integer c = 1;
    for (std::size_t k = 0; k < multiplicities.size(); ++k) {
        const int mk = multiplicities[k];
        Integer kp;
        mpz_ui_pow_ui(kp.get_mpz_t(), k + 1, static_cast<unsigned long>(mk));
        c *= kp * factorial(mk);
    }
    return c;
}

std::string CycleType::to_string() const
{
    std::string s;
    for (std::size_t k = 0; k < multiplicities.size(); ++k) {
        if (multiplicities[k] == 0) continue;
        if (!s.empty()) s += ' ';
        s += std::to_string(k + 1) + "^" + std::to_string(multiplicities[k]);
    }
    return s;
}

std::vector<CycleType> partitions(int n)
{
    if (n < 1) throw PreconditionError("partitions need n >= 1");
    std::vector<CycleType> out;
    // parts in non-increasing order, generated in reverse lexicographic order
    std::vector<int> parts{n};
    while (true) {
        CycleType c;
        c.multiplicities.assign(static_cast<std::size_t>(n), 0);
        for (int p : parts) ++c.multiplicities[static_cast<std::size_t>(p - 1)];
        out.push_back(std::move(c));
        int rem = 0;
        while (!parts.empty() && parts.back() == 1) {
            parts.pop_back();
            ++rem;
        }
        if (parts.empty()) break;
        const int k = --parts.back();
        ++rem;
        while (rem > k) {
            parts.push_back(k);
            rem -= k;
        }
        if (rem > 0) parts.push_back(rem);
    }
    return out;
}

// --- orbifold partition functions -----------------------------------------

FracSeries g_orbifold_partition(const TraceFamily &family)
{
    const auto &G = family.group();
    FracSeries sum;
    for (const auto &g : G.elements()) {
        for (const auto &h : G.elements()) sum += family.at(g, h);
    }
    return (sum * Cyclotomic(Rational(1, static_cast<long>(G.size())))).canonical();
}

namespace {

template <class Image>
FracSeries partition_sum(int n, Image &&image)
{
    std::vector<FracSeries> T(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) T[static_cast<std::size_t>(k)] = image(k);
    FracSeries sum;
    for (const CycleType &c : partitions(n)) {
        FracSeries term = FracSeries::constant(1);
        Integer denom = 1;
        for (int k = 1; k <= n; ++k) {
            const int mk = c.multiplicities[static_cast<std::size_t>(k - 1)];
            if (mk == 0) continue;
            term = term * ser_pow(T[static_cast<std::size_t>(k)], mk);
            denom *= factorial(mk);
        }
        sum += term * Cyclotomic(Rational(Integer(1), denom));
    }
    return sum.canonical();
}

} // namespace

FracSeries perm_orbifold(const FracSeries &Z, int n)
{
    require_weight0_integral_grading(Z, "permutation orbifold");
    if (n < 1) throw PreconditionError("permutation orbifold needs n >= 1");
    return partition_sum(n, [&](int k) { return hecke_weight0(Z, k); });
}

std::int64_t perm_generating_required_order(int p_through, const Rational &q_through)
{
    const std::int64_t q = through_high(q_through, 1);
    return static_cast<std::int64_t>(p_through) * (q + p_through + 1) + 1;
}

BiSeries denominator_product(const FracSeries &Z, int p_through, const Rational &q_through, int sign)
{
    require_weight0_integral_grading(Z, "denominator product");
    if (sign != 1 && sign != -1) throw PreconditionError("denominator product sign must be +1 or -1");
    const std::int64_t P = p_through + 1;
    const std::int64_t Qt = through_high(q_through, 1);
    const std::int64_t v = Z.valuation().value_or(0);
    const Rational mu = v < 0 ? Rational(v) : Rational(0);
    // every s < S is needed so that row P-1 is known below Qt
    std::int64_t S = P > 1 ? ceil_rational(Rational(Qt) - mu * (P - 2)) : Qt;
    for (std::int64_t r = 1; r < P && !Z.is_exact(); ++r) S = std::min(S, ceil_rational(Rational(Z.high(), r)));
    std::vector<ProductFactor> factors;
    for (std::int64_t r = 1; r < P; ++r) {
        for (std::int64_t s = -floor_div(-v, r); s < S; ++s) {
            const Integer e = integer_exponent(Z.coefficient(r * s), "product exponent");
            if (e != 0) factors.push_back({r, s, sign > 0 ? e : Integer(-e)});
        }
    }
    return expand_product(factors, 1, 1, P, S).q_truncated_at(Rational(Qt));
}

BiSeries denominator_difference(const FracSeries &Z, int p_grading)
{
    if (p_grading % Z.grading() != 0) throw PreconditionError("p-grading must be a multiple of the series grading");
    const FracSeries z = Z.regraded(p_grading);
    const std::int64_t p_high = z.is_exact() ? kExact : z.high() + 1;
    BiSeries out = BiSeries::zero(p_grading, p_high);
    for (const auto &[n, c] : z.terms()) out += BiSeries::monomial(n + 1, FracSeries::constant(c), p_grading, p_high);
    out -= BiSeries::monomial(1, z, p_grading, p_high);
    return out;
}

PermGenerating perm_generating(const FracSeries &Z, int p_through, const Rational &q_through, bool with_closed_form)
{
    require_weight0_integral_grading(Z, "permutation generating function");
    if (p_through < 1) throw PreconditionError("generating function needs p-order >= 1");
    const std::int64_t P = p_through + 1;
    const Rational qb = Rational(through_high(q_through, 1));
    BiSeries log_sum = BiSeries::zero(1, P);
    for (int n = 1; n < P; ++n) log_sum += BiSeries::monomial(n, hecke_weight0(Z, n), 1, P);
    PermGenerating out;
    out.exp_form = bi_exp(log_sum).q_truncated_at(qb);
    out.product_form = denominator_product(Z, p_through, q_through, -1);
    if (with_closed_form) out.closed_form = bi_inv(denominator_difference(Z, 1).truncated(P)).q_truncated_at(qb);
    return out;
}

// --- twisted Hecke orbifold -----------------------------------------------

FracSeries hecke_orbifold(const TraceFamily &family, const AbelianGroup::Element &g, const AbelianGroup::Element &h,
                          int n)
{
    if (n < 1) throw PreconditionError("Hecke index must be positive");
    if (!family.anomaly_free()) throw PreconditionError("twisted Hecke operators need an anomaly-free family");
    const auto &G = family.group();
    // closure first, so the error names the missing pair
    for (const auto &[a, d] : factor_pairs(n)) {
        for (int b = 0; b < d; ++b) (void)family.at(G.mul(G.pow(g, a), G.pow(h, b)), G.pow(h, d));
    }
    if (n == 1) return family.at(g, h);
    MobiusAccumulator acc(0);
    const Rational scalar(1, n);
    for (const auto &[a, d] : factor_pairs(n)) {
        for (int b = 0; b < d; ++b) acc.add(family.at(G.mul(G.pow(g, a), G.pow(h, b)), G.pow(h, d)), a, b, d, scalar);
    }
    return acc.result();
}

FracSeries perm_orbifold_twisted(const TraceFamily &family, const AbelianGroup::Element &g,
                                 const AbelianGroup::Element &h, int n)
{
    if (n < 1) throw PreconditionError("permutation orbifold needs n >= 1");
    return partition_sum(n, [&](int k) { return hecke_orbifold(family, g, h, k); });
}

PermGeneratingTwisted perm_generating_twisted(const TraceFamily &family, const AbelianGroup::Element &g,
                                              const AbelianGroup::Element &h, const Rational &p_through,
                                              const Rational &q_through)
{
    const auto &G = family.group();
    const int m = G.order_of(h);
    const std::int64_t P = through_high(p_through, m);
    const Rational qb = ratio(through_high(q_through, m), m);
    if (P < 2) throw PreconditionError("generating function needs p-order >= 1/m");
    BiSeries log_sum = BiSeries::zero(m, P);
    for (int n = 1; n < P; ++n) log_sum += BiSeries::monomial(n, hecke_orbifold(family, g, h, n), m, P);
    PermGeneratingTwisted out;
    out.exp_form = bi_exp(log_sum).q_truncated_at(qb);
    if (!G.is_identity(g)) return out;

    // literal product over r >= 1, s in Z with exponent -a((1,h^r), rs/m)
    const Rational qexp_num = qb * m; // exclusive q-numerator bound
    const std::int64_t Qt = qexp_num.get_num().get_si();
    Rational mu = 0;
    std::vector<FracSeries> sector(static_cast<std::size_t>(P));
    std::vector<std::int64_t> smin(static_cast<std::size_t>(P), 0);
    for (std::int64_t r = 1; r < P; ++r) {
        sector[r] = family.at(G.identity(), G.pow(h, r));
        const auto v = sector[r].valuation();
        if (!v) continue;
        // r s / m >= v / grading
        smin[r] = ceil_rational(ratio(*v * m, r * sector[r].grading()));
        mu = std::min(mu, ratio(smin[r], r));
    }
    std::int64_t S = P > 1 ? ceil_rational(Rational(Qt) - mu * (P - 2)) : Qt;
    for (std::int64_t r = 1; r < P; ++r) {
        if (!sector[r].is_exact()) S = std::min(S, ceil_rational(sector[r].high_exponent() * m / r));
    }
    std::vector<ProductFactor> factors;
    for (std::int64_t r = 1; r < P; ++r) {
        const auto v = sector[r].valuation();
        if (!v) continue;
        for (std::int64_t s = smin[r]; s < S; ++s) {
            const Integer e = integer_exponent(sector[r].coefficient_at(ratio(r * s, m)), "product exponent");
            if (e != 0) factors.push_back({r, s, Integer(-e)});
        }
    }
    out.product_form = expand_product(factors, m, m, P, S).q_truncated_at(qb);

    const FracSeries &z = family.at(G.identity(), h);
    const FracSeries zm = z.regraded(lcm64(z.grading(), m));
    const auto v = zm.valuation();
    if (zm.grading() == m && v && *v == -1 && zm.coefficient(-1) == Cyclotomic(1)) {
        out.closed_form = bi_inv(denominator_difference(zm, m).truncated(P)).q_truncated_at(qb);
    }
    return out;
}

FracSeries fricke_twisted_sector(const FracSeries &T_h, int m, bool fricke)
{
    if (!fricke) throw PreconditionError("the twisted sector is a rescaled McKay-Thompson series only for Fricke classes");
    if (m < 1) throw PreconditionError("element order must be positive");
    if (T_h.grading() != 1) throw PreconditionError("McKay-Thompson series must be integrally graded");
    return T_h.with_grading(m);
}

// --- Generalized Moonshine replication --------------------------------------

std::vector<Check> gen_replication_check(const TraceFamily &family, const AbelianGroup::Element &g,
                                         const AbelianGroup::Element &h, int n, const std::string &id_prefix)
{
    const auto &G = family.group();
    const int m = G.order_of(h);
    if (n < 1) throw PreconditionError("replication index must be positive");
    if (m > 1) {
        const auto fr = family.fricke(h);
        if (!fr) throw PreconditionError("no Fricke declaration for h = " + G.element_string(h));
        if (!*fr) throw PreconditionError("replication of twisted sectors needs a Fricke class h");
    }
    const FracSeries &Z = family.at(g, h);
    if (m % Z.grading() != 0) throw PreconditionError("entry grading does not divide the order of h");
    const FracSeries zm = Z.regraded(m);
    const auto v = zm.valuation();
    if (!v || *v != -1) throw PreconditionError("entry " + family.pair_string(g, h) + " does not start at q^(-1/m)");
    const Cyclotomic u = zm.coefficient(-1);
    const FracSeries Y = zm * u.inverse();
    const FracSeries y = Y.as_integral();

    const FracSeries lhs = hecke_orbifold(family, g, h, n).regraded(m);
    const Cyclotomic ell = lhs.coefficient(-n) * Cyclotomic(Rational(n));
    if (ell.is_zero()) throw PreconditionError("Hecke image has no pole of order n/m");
    const FracSeries rhs = (faber(y, n).evaluate(y) * (ell * Cyclotomic(Rational(1, n)))).with_grading(m);

    const std::string pair = family.pair_string(g, h);
    char id[128];
    std::snprintf(id, sizeof id, "%s.replication.n%02d", id_prefix.c_str(), n);
    std::vector<Check> out;
    out.push_back(series_check(id,
                               "T(n)Z = (l/n) F_n(Y) for the entry Z at " + pair + ", n = " + std::to_string(n) +
                                   ", Y the entry divided by its leading coefficient, F_n its Faber polynomial in "
                                   "q^(1/m), l the leading coefficient of T(n)Z times n",
                               lhs, rhs));
    if (n == 2) {
        const Cyclotomic a1 = Y.coefficient(1);
        const FracSeries closing = (Y * Y - FracSeries::constant(a1 * Cyclotomic(2))) * ell;
        std::snprintf(id, sizeof id, "%s.closing.n02", id_prefix.c_str());
        out.push_back(series_check(id,
                                   "Z((g^2,h),2tau) + Z((g,h^2),tau/2) + Z((gh,h^2),(tau+1)/2) = l (Y^2 - 2a(1/m)) at " +
                                       pair + ", Y the normalized entry",
                                   lhs * Cyclotomic(2), closing));
    }
    return out;
}

// --- modular consistency ----------------------------------------------------

std::vector<Check> trace_t_consistency(const TraceFamily &family, const std::string &id_prefix)
{
    const auto &G = family.group();
    std::vector<Check> out;
    for (const auto &[pair, f] : family.entries()) {
        const auto &[g, h] = pair;
        const auto gh = G.mul(g, h);
        if (!family.contains(gh, h)) continue;
        out.push_back(series_check(id_prefix + ".T-consistency" + family.pair_string(g, h),
                                   "entry (gh, h) equals entry (g, h) evaluated at tau - 1 for (g,h) = " +
                                       family.pair_string(g, h),
                                   family.at(gh, h), mobius_substitute(f, 1, -1, 1)));
    }
    return out;
}

std::vector<Check> trace_s_consistency(const TraceFamily &family, const std::string &id_prefix, double tolerance,
                                       std::int64_t truncation)
{
    const auto &G = family.group();
    const std::complex<double> tau(0.0, 1.2);
    const std::complex<double> stau = -1.0 / tau;
    std::vector<Check> out;
    for (const auto &[pair, f] : family.entries()) {
        const auto &[g, h] = pair;
        const auto hi = G.inverse(h);
        if (!family.contains(hi, g)) continue;
        const std::complex<double> lhs = f.truncated_at(Rational(truncation)).evaluate(tau);
        const std::complex<double> rhs = family.at(hi, g).truncated_at(Rational(truncation)).evaluate(stau);
        const double err = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
        out.push_back(numeric_check(id_prefix + ".S-consistency" + family.pair_string(g, h),
                                    "entry (g, h) at tau equals entry (h^-1, g) at -1/tau, tau = 6i/5, (g,h) = " +
                                        family.pair_string(g, h),
                                    err, tolerance, "truncation q^" + std::to_string(truncation),
                                    "relative error"));
    }
    return out;
}

TraceFamily hecke_orbifold_family(const TraceFamily &family, int n)
{
    TraceFamily out(family.label() + ".T" + std::to_string(n), family.group());
    out.set_anomaly_free(family.anomaly_free());
    for (const auto &[pair, f] : family.entries()) {
        (void)f;
        try {
            out.set(pair.first, pair.second, hecke_orbifold(family, pair.first, pair.second, n));
        } catch (const TruncationError &) {
            throw;
        } catch (const PreconditionError &) {
            // pairs whose Hecke orbit leaves the family are skipped
        }
    }
    return out;
}

} // namespace qseries
