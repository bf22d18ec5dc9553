#include "qseries/hecke.hpp"

#include <cmath>
#include <cstdio>

#include "qseries/errors.hpp"
#include "qseries/faber.hpp"
#include "qseries/modforms.hpp"

namespace qseries {

TwistedFamily::Index TwistedFamily::normalize(int i, int j) const
{
    return {static_cast<int>(mod_floor(i, order_)), static_cast<int>(mod_floor(j, order_))};
}

bool TwistedFamily::contains(int i, int j) const
{
    return entries_.count(normalize(i, j)) != 0;
}

const FracSeries &TwistedFamily::at(int i, int j) const
{
    const auto it = entries_.find(normalize(i, j));
    if (it == entries_.end()) {
        const auto idx = normalize(i, j);
        throw PreconditionError("family is not closed: missing entry (" + std::to_string(idx.first) + "," +
                                std::to_string(idx.second) + ")");
    }
    return it->second;
}

void TwistedFamily::set(int i, int j, FracSeries f)
{
    if (f.weight() != weight_ && !(f.is_exact() && f.is_zero())) {
        throw PreconditionError("family of weight " + std::to_string(weight_) + " cannot hold a weight " +
                                std::to_string(f.weight()) + " series");
    }
    entries_[normalize(i, j)] = std::move(f).with_weight(weight_);
}

TwistedFamily twisted_eisenstein_family(int k, int N, std::int64_t order)
{
    TwistedFamily fam(N, k);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) fam.set(i, j, twisted_eisenstein(k, N, i, j, order));
    }
    return fam;
}

namespace {

Rational int_pow(std::int64_t base, int exponent)
{
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(std::abs(exponent)));
    return exponent >= 0 ? Rational(p) : Rational(Integer(1), p);
}

std::vector<std::pair<int, int>> factor_pairs(int n)
{
    std::vector<std::pair<int, int>> out;
    for (unsigned a : divisors(static_cast<unsigned>(n))) out.emplace_back(static_cast<int>(a), n / static_cast<int>(a));
    return out;
}

void check_hecke_input(int k, int n, const FracSeries &f)
{
    if (n < 1) throw PreconditionError("Hecke index must be positive");
    if (f.grading() != 1) throw PreconditionError("classical Hecke operators need an integrally graded series");
    if (k != f.weight()) {
        throw PreconditionError("Hecke weight " + std::to_string(k) + " does not match series weight " +
                                std::to_string(f.weight()));
    }
}

void check_result_range(const FracSeries &f, int n, const FracSeries &result)
{
    const std::int64_t v = f.valuation().value_or(0);
    const std::int64_t lowest = v < 0 ? v * n : 0;
    if (!result.is_exact() && result.high() <= lowest) {
        throw TruncationError("T(" + std::to_string(n) + ") of a series known below " +
                              exponent_string(f.high(), f.grading()) + " determines no coefficient");
    }
}

} // namespace

FracSeries hecke_classical(int k, int n, const FracSeries &f)
{
    check_hecke_input(k, n, f);
    MobiusAccumulator acc(k);
    for (const auto &[a, d] : factor_pairs(n)) {
        Rational scalar = int_pow(a, k) / Rational(n);
        scalar.canonicalize();
        for (int b = 0; b < d; ++b) acc.add(f, a, b, d, scalar);
    }
    FracSeries out = acc.result();
    check_result_range(f, n, out);
    return out;
}

FracSeries hecke_divisor_form(int k, int n, const FracSeries &f)
{
    check_hecke_input(k, n, f);
    const std::int64_t high = f.is_exact() ? kExact : floor_div(f.high(), n);
    if (f.is_exact()) throw PreconditionError("divisor form needs a truncated series");
    const std::int64_t v = f.valuation().value_or(0);
    const std::int64_t lo = v < 0 ? v * n : 0;
    std::vector<Cyclotomic> coeffs;
    for (std::int64_t M = lo; M < high; ++M) {
        Cyclotomic c;
        const std::int64_t g = gcd64(n, M);
        for (unsigned a : divisors(static_cast<unsigned>(g))) {
            const std::int64_t idx = static_cast<std::int64_t>(n) * M / (static_cast<std::int64_t>(a) * a);
            const Cyclotomic x = f.coefficient(idx);
            if (!x.is_zero()) c += x * Cyclotomic(int_pow(a, k - 1));
        }
        coeffs.push_back(c);
    }
    FracSeries out = FracSeries::from_coefficients(1, lo, std::move(coeffs), high, k);
    check_result_range(f, n, out);
    return out;
}

TwistedFamily hecke_twisted(const TwistedFamily &family, int n)
{
    if (n < 1) throw PreconditionError("Hecke index must be positive");
    const int N = family.order();
    const int k = family.weight();
    TwistedFamily out(N, k);
    // Closure first, so a partial family fails before any work.
    for (const auto &[idx, f] : family.entries()) {
        for (const auto &[a, d] : factor_pairs(n)) {
            for (int b = 0; b < d; ++b) {
                family.at(a * idx.first + b * idx.second, d * idx.second);
            }
        }
    }
    for (const auto &[idx, f] : family.entries()) {
        const auto [i, j] = idx;
        MobiusAccumulator acc(k);
        for (const auto &[a, d] : factor_pairs(n)) {
            Rational scalar = int_pow(a, k) / Rational(n);
            scalar.canonicalize();
            for (int b = 0; b < d; ++b) acc.add(family.at(a * i + b * j, d * j), a, b, d, scalar);
        }
        out.set(i, j, acc.result());
    }
    return out;
}

TwistedFamily homothety(const TwistedFamily &family, int n)
{
    TwistedFamily out(family.order(), family.weight());
    for (const auto &[idx, f] : family.entries()) out.set(idx.first, idx.second, family.at(n * idx.first, n * idx.second));
    return out;
}

namespace {

std::string index_string(const TwistedFamily::Index &idx)
{
    return "(" + std::to_string(idx.first) + "," + std::to_string(idx.second) + ")";
}

// Entrywise exact comparison of two families as a single check.
Check family_check(std::string id, std::string description, const TwistedFamily &lhs, const TwistedFamily &rhs)
{
    Check worst;
    bool have = false;
    Rational bound;
    bool bounded = false;
    std::size_t passes = 0;
    for (const auto &[idx, f] : lhs.entries()) {
        if (!rhs.contains(idx.first, idx.second)) {
            return bool_check(id, description, false, "", "entry " + index_string(idx) + " missing on the right");
        }
        Check c = series_check(id, description, f, rhs.at(idx.first, idx.second));
        const SeriesComparison cmp = compare_series(f, rhs.at(idx.first, idx.second));
        if (cmp.conclusive_high < kExact) {
            if (!bounded || cmp.conclusive_bound() < bound) bound = cmp.conclusive_bound();
            bounded = true;
        }
        if (c.status == Status::Fail) {
            c.detail = "entry " + index_string(idx) + ": " + c.detail;
            return c;
        }
        if (c.status == Status::Pass) ++passes;
        if (!have) {
            worst = c;
            have = true;
        }
    }
    Check out;
    out.id = std::move(id);
    out.description = std::move(description);
    out.conclusive_range = bounded ? "exponents < " + bound.get_str() : "all exponents";
    out.status = passes > 0 ? Status::Pass : Status::Inconclusive;
    out.detail = std::to_string(passes) + " of " + std::to_string(lhs.entries().size()) +
                 " entries agree exactly (others have no known nonzero coefficient)";
    if (passes == lhs.entries().size()) out.detail = "all " + std::to_string(passes) + " entries agree exactly";
    return out;
}

TwistedFamily family_add(const TwistedFamily &a, const TwistedFamily &b, const Cyclotomic &scale_b)
{
    TwistedFamily out(a.order(), a.weight());
    for (const auto &[idx, f] : a.entries()) out.set(idx.first, idx.second, f + b.at(idx.first, idx.second) * scale_b);
    return out;
}

bool coprime(int a, int b)
{
    return gcd64(a, b) == 1;
}

std::int64_t ipow(std::int64_t b, int e)
{
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

std::vector<Check> twisted_t_consistency(const TwistedFamily &family, const std::string &id_prefix)
{
    std::vector<Check> out;
    for (const auto &[idx, f] : family.entries()) {
        const auto [i, j] = idx;
        if (!family.contains(i + j, j)) continue;
        out.push_back(series_check(id_prefix + ".T-consistency" + index_string(idx),
                                   "entry (i+j, j) equals entry (i, j) evaluated at tau - 1",
                                   family.at(i + j, j), mobius_substitute(f, 1, -1, 1)));
    }
    return out;
}

std::vector<Check> twisted_s_consistency(const TwistedFamily &family, const std::string &id_prefix,
                                         double tolerance, std::int64_t truncation)
{
    std::vector<Check> out;
    const std::complex<double> tau(0.0, 1.2);
    const std::complex<double> stau = -1.0 / tau;
    const int k = family.weight();
    for (const auto &[idx, f] : family.entries()) {
        const auto [i, j] = idx;
        if (!family.contains(-j, i)) continue;
        const FracSeries a = f.truncated_at(Rational(truncation));
        const FracSeries b = family.at(-j, i).truncated_at(Rational(truncation));
        const std::complex<double> lhs = a.evaluate(tau);
        const std::complex<double> rhs = std::pow(tau, -k) * b.evaluate(stau);
        const double err = std::abs(lhs - rhs);
        out.push_back(numeric_check(id_prefix + ".S-consistency" + index_string(idx),
                                    "entry (i, j) at tau equals tau^-k times entry (-j, i) at -1/tau, tau = 6i/5",
                                    err, tolerance, "truncation q^" + std::to_string(truncation)));
    }
    return out;
}

std::vector<Check> verify_hecke_algebra_classical(const FracSeries &f, const std::string &label, int max_factor,
                                                  const std::vector<int> &primes, int max_power)
{
    const int k = f.weight();
    std::map<int, FracSeries> images;
    auto T = [&](int n) -> const FracSeries & {
        auto it = images.find(n);
        if (it == images.end()) it = images.emplace(n, n == 1 ? f : hecke_classical(k, n, f)).first;
        return it->second;
    };
    std::vector<Check> out;
    for (int m = 2; m <= max_factor; ++m) {
        for (int n = m + 1; n <= max_factor; ++n) {
            if (!coprime(m, n)) continue;
            const FracSeries lhs = hecke_classical(k, m, T(n));
            char id[96];
            std::snprintf(id, sizeof id, "%s.multiplicative.m%02d.n%02d", label.c_str(), m, n);
            out.push_back(series_check(id,
                                       "T(m)T(n) = T(mn) for coprime m = " + std::to_string(m) + ", n = " +
                                           std::to_string(n) + " on " + label,
                                       lhs, T(m * n)));
        }
    }
    for (int p : primes) {
        for (int e = 1; e <= max_power; ++e) {
            const int pe = static_cast<int>(ipow(p, e));
            const FracSeries lhs = hecke_classical(k, p, T(pe));
            const FracSeries rhs = T(pe * p) + T(pe / p) * Cyclotomic(int_pow(p, k - 1));
            char id[96];
            std::snprintf(id, sizeof id, "%s.prime-power.p%d.m%d", label.c_str(), p, e);
            out.push_back(series_check(id,
                                       "T(p)T(p^m) = T(p^(m+1)) + p^(k-1) T(p^(m-1)) for p = " + std::to_string(p) +
                                           ", m = " + std::to_string(e) + ", k = " + std::to_string(k) + " on " +
                                           label,
                                       lhs, rhs));
        }
    }
    return out;
}

std::vector<Check> verify_hecke_algebra_twisted(const TwistedFamily &family, const std::string &label,
                                                const std::vector<int> &primes, int max_power,
                                                const std::vector<std::pair<int, int>> &coprime_pairs)
{
    const int k = family.weight();
    std::map<int, TwistedFamily> images;
    auto T = [&](int n) -> const TwistedFamily & {
        auto it = images.find(n);
        if (it == images.end()) it = images.emplace(n, n == 1 ? family : hecke_twisted(family, n)).first;
        return it->second;
    };
    std::vector<Check> out;
    for (const auto &[m, n] : coprime_pairs) {
        out.push_back(family_check(label + ".multiplicative.m" + std::to_string(m) + ".n" + std::to_string(n),
                                   "twisted T(m)T(n) = T(mn) for coprime m = " + std::to_string(m) + ", n = " +
                                       std::to_string(n) + " on " + label,
                                   hecke_twisted(T(n), m), T(m * n)));
    }
    for (int p : primes) {
        for (int e = 1; e <= max_power; ++e) {
            const int pe = static_cast<int>(ipow(p, e));
            const TwistedFamily lhs = hecke_twisted(T(pe), p);
            const TwistedFamily rhs = family_add(T(pe * p), homothety(T(pe / p), p), Cyclotomic(int_pow(p, k - 1)));
            out.push_back(family_check(label + ".prime-power.p" + std::to_string(p) + ".m" + std::to_string(e),
                                       "twisted T(p)T(p^m) = T(p^(m+1)) + p^(k-1) T(p^(m-1)) R(p) for p = " +
                                           std::to_string(p) + ", m = " + std::to_string(e) + " on " + label,
                                       lhs, rhs));
        }
        out.push_back(family_check(label + ".homothety-commutes.R" + std::to_string(p) + ".T" + std::to_string(p),
                                   "R(m)T(n) = T(n)R(m) for m = n = " + std::to_string(p) + " on " + label,
                                   homothety(T(p), p), hecke_twisted(homothety(family, p), p)));
        for (int q : primes) {
            if (q == p) continue;
            out.push_back(family_check(label + ".homothety-commutes.R" + std::to_string(q) + ".T" + std::to_string(p),
                                       "R(m)T(n) = T(n)R(m) for m = " + std::to_string(q) + ", n = " +
                                           std::to_string(p) + " on " + label,
                                       homothety(T(p), q), hecke_twisted(homothety(family, q), p)));
            out.push_back(family_check(label + ".homothety-multiplicative.R" + std::to_string(p) + ".R" +
                                           std::to_string(q),
                                       "R(m)R(n) = R(mn) for m = " + std::to_string(p) + ", n = " +
                                           std::to_string(q) + " on " + label,
                                       homothety(homothety(family, q), p), homothety(family, p * q)));
        }
    }
    return out;
}

Check replication_check(const FracSeries &t, int n, const std::string &label)
{
    if (t.weight() != 0) throw PreconditionError("replication needs a weight 0 series");
    const Cyclotomic c = t.coefficient(0);
    const FracSeries t0 = t - FracSeries::constant(c);
    const FracSeries lhs = hecke_classical(0, n, t0);
    const FracSeries rhs = faber(t0, n).evaluate(t0) * Cyclotomic(Rational(1, n));
    char id[96];
    std::snprintf(id, sizeof id, "%s.replication.n%02d", label.c_str(), n);
    return series_check(id, "T(n)t = (1/n) P_n(t) with P_n the Faber polynomial, n = " + std::to_string(n) + ", t = " + label,
                        lhs, rhs);
}

} // namespace qseries
