#include "qseries/biseries.hpp"

#include <algorithm>

#include "qseries/errors.hpp"

namespace qseries {

namespace {

std::string p_exponent_string(std::int64_t n, int m)
{
    std::string s = exponent_string(n, m);
    if (s == "1") return "p^0";
    return "p" + s.substr(1);
}

FracSeries one_series()
{
    return FracSeries::constant(Cyclotomic(1));
}

} // namespace

BiSeries BiSeries::zero(int p_grading, std::int64_t p_high)
{
    if (p_grading <= 0) throw PreconditionError("p grading must be positive");
    BiSeries b;
    b.p_grading_ = p_grading;
    b.p_high_ = std::min(p_high, kExact);
    return b;
}

BiSeries BiSeries::one(std::int64_t p_high)
{
    return monomial(0, one_series(), 1, p_high);
}

BiSeries BiSeries::monomial(std::int64_t p_numerator, const FracSeries &coefficient, int p_grading,
                            std::int64_t p_high)
{
    BiSeries b = zero(p_grading, p_high);
    b.set(p_numerator, coefficient);
    return b;
}

void BiSeries::set(std::int64_t p_numerator, FracSeries value)
{
    if (p_numerator >= p_high_) return;
    if (value.is_exact() && value.is_zero()) {
        coeffs_.erase(p_numerator);
        return;
    }
    coeffs_[p_numerator] = std::move(value);
}

FracSeries BiSeries::coefficient(std::int64_t p_numerator) const
{
    if (p_numerator >= p_high_) {
        throw TruncationError("coefficient of " + p_exponent_string(p_numerator, p_grading_) +
                              " is beyond the known p-range");
    }
    auto it = coeffs_.find(p_numerator);
    return it == coeffs_.end() ? FracSeries() : it->second;
}

FracSeries BiSeries::coefficient_at(const Rational &p_exponent) const
{
    Rational scaled = p_exponent * p_grading_;
    if (scaled.get_den() != 1) {
        if (p_high_ < kExact && p_exponent >= ratio(p_high_, p_grading_)) {
            throw TruncationError("coefficient of p^" + p_exponent.get_str() + " is beyond the known p-range");
        }
        return FracSeries();
    }
    return coefficient(scaled.get_num().get_si());
}

Rational BiSeries::q_bound() const
{
    bool any = false;
    Rational best;
    for (const auto &[n, s] : coeffs_) {
        if (s.is_exact()) continue;
        Rational b = s.high_exponent();
        if (!any || b < best) best = b;
        any = true;
    }
    return any ? best : Rational(kExact);
}

std::optional<std::int64_t> BiSeries::valuation() const
{
    for (const auto &[n, s] : coeffs_) {
        if (!s.is_zero()) return n;
    }
    return std::nullopt;
}

BiSeries BiSeries::regraded(int p_grading) const
{
    if (p_grading <= 0 || p_grading % p_grading_ != 0) throw PreconditionError("invalid p regrading");
    const std::int64_t s = p_grading / p_grading_;
    BiSeries b = zero(p_grading, sat_mul(p_high_, s));
    for (const auto &[n, f] : coeffs_) b.coeffs_[n * s] = f;
    return b;
}

BiSeries BiSeries::truncated(std::int64_t p_high) const
{
    BiSeries b = *this;
    b.p_high_ = std::min(p_high_, p_high);
    b.coeffs_.erase(b.coeffs_.lower_bound(b.p_high_), b.coeffs_.end());
    return b;
}

BiSeries BiSeries::q_truncated_at(const Rational &bound) const
{
    BiSeries b = *this;
    for (auto &[n, f] : b.coeffs_) f = f.truncated_at(bound);
    return b;
}

BiSeries BiSeries::operator-() const
{
    BiSeries b = *this;
    for (auto &[n, f] : b.coeffs_) f = -f;
    return b;
}

BiSeries &BiSeries::operator+=(const BiSeries &other)
{
    const int l = static_cast<int>(lcm64(p_grading_, other.p_grading_));
    BiSeries a = regraded(l);
    const BiSeries b = other.regraded(l);
    a.p_high_ = std::min(a.p_high_, b.p_high_);
    a.coeffs_.erase(a.coeffs_.lower_bound(a.p_high_), a.coeffs_.end());
    for (const auto &[n, f] : b.coeffs_) {
        if (n >= a.p_high_) break;
        auto it = a.coeffs_.find(n);
        if (it == a.coeffs_.end()) a.coeffs_[n] = f;
        else it->second += f;
    }
    return *this = std::move(a);
}

BiSeries &BiSeries::operator-=(const BiSeries &other)
{
    return *this += -other;
}

BiSeries &BiSeries::operator*=(const FracSeries &q_scalar)
{
    for (auto &[n, f] : coeffs_) f = f * q_scalar;
    return *this;
}

BiSeries operator*(const BiSeries &a, const BiSeries &b)
{
    return bi_mul(a, b);
}

BiSeries bi_mul(const BiSeries &a0, const BiSeries &b0)
{
    const int l = static_cast<int>(lcm64(a0.p_grading(), b0.p_grading()));
    const BiSeries a = a0.regraded(l);
    const BiSeries b = b0.regraded(l);
    const std::int64_t va = a.valuation().value_or(a.p_high());
    const std::int64_t vb = b.valuation().value_or(b.p_high());
    const std::int64_t high = std::min(sat_add(a.p_high(), vb), sat_add(b.p_high(), va));
    std::map<std::int64_t, FracSeries> acc;
    for (const auto &[i, f] : a.coefficients()) {
        for (const auto &[j, g] : b.coefficients()) {
            if (i + j >= high) break;
            FracSeries prod = f * g;
            auto it = acc.find(i + j);
            if (it == acc.end()) acc.emplace(i + j, std::move(prod));
            else it->second += prod;
        }
    }
    BiSeries out = BiSeries::zero(l, high);
    for (auto &[n, f] : acc) out = out + BiSeries::monomial(n, f, l, high);
    return out;
}

namespace {

std::int64_t require_p_bound(const BiSeries &f, const char *what)
{
    if (f.p_high() >= kExact) {
        throw PreconditionError(std::string(what) + " of a p-exact series needs a p truncation");
    }
    return f.p_high();
}

} // namespace

BiSeries bi_exp(const BiSeries &f)
{
    const auto v = f.valuation();
    if (v && *v <= 0) throw PreconditionError("exp needs a series with strictly positive p-valuation");
    const std::int64_t high = require_p_bound(f, "exp");
    const int m = f.p_grading();
    if (high <= 0) return BiSeries::zero(m, high);
    std::vector<FracSeries> e(static_cast<std::size_t>(high));
    e[0] = one_series();
    for (std::int64_t n = 1; n < high; ++n) {
        FracSeries acc;
        for (const auto &[k, fk] : f.coefficients()) {
            if (k > n) break;
            acc += fk * e[static_cast<std::size_t>(n - k)] * Cyclotomic(Rational(k));
        }
        e[static_cast<std::size_t>(n)] = acc * Cyclotomic(Rational(1, n));
    }
    BiSeries out = BiSeries::zero(m, high);
    for (std::int64_t n = 0; n < high; ++n) out += BiSeries::monomial(n, e[static_cast<std::size_t>(n)], m, high);
    return out;
}

BiSeries bi_log(const BiSeries &f)
{
    const std::int64_t high = require_p_bound(f, "log");
    const int m = f.p_grading();
    if (high <= 0) return BiSeries::zero(m, high);
    const FracSeries f0 = f.coefficient(0);
    const auto cmp = compare_series(f0, one_series());
    if (!f.coefficients().empty() && f.coefficients().begin()->first < 0) {
        throw PreconditionError("log needs a series without negative p-powers");
    }
    if (!cmp.equal) throw PreconditionError("log needs p-constant term 1");
    std::vector<FracSeries> l(static_cast<std::size_t>(high));
    for (std::int64_t n = 1; n < high; ++n) {
        FracSeries acc = f.coefficient(n) * Cyclotomic(Rational(n));
        for (std::int64_t k = 1; k < n; ++k) {
            const auto it = f.coefficients().find(n - k);
            if (it == f.coefficients().end()) continue;
            acc -= l[static_cast<std::size_t>(k)] * it->second * Cyclotomic(Rational(k));
        }
        l[static_cast<std::size_t>(n)] = acc * Cyclotomic(Rational(1, n));
    }
    BiSeries out = BiSeries::zero(m, high);
    for (std::int64_t n = 1; n < high; ++n) out += BiSeries::monomial(n, l[static_cast<std::size_t>(n)], m, high);
    return out;
}

BiSeries bi_inv(const BiSeries &f)
{
    const std::int64_t high = require_p_bound(f, "inverse");
    const int m = f.p_grading();
    const auto v = f.valuation();
    if (!v) throw DivisionByZero("cannot invert a zero two-variable series");
    if (*v != 0) throw PreconditionError("inverse needs a nonzero p-constant term");
    const FracSeries f0 = f.coefficient(0);
    const FracSeries b0 = ser_inv(f0);
    std::vector<FracSeries> b(static_cast<std::size_t>(std::max<std::int64_t>(high, 1)));
    b[0] = b0;
    for (std::int64_t n = 1; n < high; ++n) {
        FracSeries acc;
        for (const auto &[k, fk] : f.coefficients()) {
            if (k == 0) continue;
            if (k > n) break;
            acc += fk * b[static_cast<std::size_t>(n - k)];
        }
        b[static_cast<std::size_t>(n)] = -(acc * b0);
    }
    BiSeries out = BiSeries::zero(m, high);
    for (std::int64_t n = 0; n < high; ++n) out += BiSeries::monomial(n, b[static_cast<std::size_t>(n)], m, high);
    return out;
}

std::string BiComparison::range_string() const
{
    std::string p = p_high >= kExact ? "all p-exponents" : "p-exponents < " + ratio(p_high, p_grading).get_str();
    std::string q = q_exact ? "all q-exponents" : "q-exponents < " + q_bound.get_str();
    return p + ", " + q;
}

std::string BiComparison::mismatch_string() const
{
    if (!mismatch_p) return "";
    std::string s = "first mismatch at " + p_exponent_string(*mismatch_p, p_grading);
    if (mismatch_q) s += " " + exponent_string(*mismatch_q, mismatch_q_grading);
    return s;
}

BiComparison compare_biseries(const BiSeries &a0, const BiSeries &b0)
{
    BiComparison cmp;
    cmp.p_grading = static_cast<int>(lcm64(a0.p_grading(), b0.p_grading()));
    const BiSeries a = a0.regraded(cmp.p_grading);
    const BiSeries b = b0.regraded(cmp.p_grading);
    cmp.p_high = std::min(a.p_high(), b.p_high());
    std::vector<std::int64_t> keys;
    for (const auto &[n, f] : a.coefficients()) keys.push_back(n);
    for (const auto &[n, f] : b.coefficients()) keys.push_back(n);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (std::int64_t n : keys) {
        if (n >= cmp.p_high) break;
        const SeriesComparison row = compare_series(a.coefficient(n), b.coefficient(n));
        if (row.conclusive_high < kExact) {
            const Rational qb = row.conclusive_bound();
            if (cmp.q_exact || qb < cmp.q_bound) cmp.q_bound = qb;
            cmp.q_exact = false;
        }
        if (!row.equal && cmp.equal) {
            cmp.equal = false;
            cmp.mismatch_p = n;
            cmp.mismatch_q = row.first_mismatch;
            cmp.mismatch_q_grading = row.grading;
        }
    }
    return cmp;
}

} // namespace qseries
