#include "qseries/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qseries/errors.hpp"

namespace qseries {

std::int64_t sat_add(std::int64_t a, std::int64_t b)
{
    if (a >= kExact || b >= kExact) return kExact;
    return std::min(a + b, kExact);
}

std::int64_t sat_mul(std::int64_t a, std::int64_t b)
{
    if (a >= kExact || b >= kExact) return kExact;
    if (a == 0 || b == 0) return 0;
    if (std::abs(a) > kExact / std::abs(b)) return kExact;
    return std::min(a * b, kExact);
}

namespace {

bool is_exact_zero(const FracSeries &f)
{
    return f.is_exact() && f.is_zero();
}

int merge_weight(const FracSeries &f, const FracSeries &g)
{
    if (f.weight() == g.weight()) return f.weight();
    if (is_exact_zero(f)) return g.weight();
    if (is_exact_zero(g)) return f.weight();
    throw PreconditionError("cannot add series of weight " + std::to_string(f.weight()) + " and " +
                            std::to_string(g.weight()));
}

// Fraction n/m in lowest terms as "a/b" or "a".
std::string fraction_string(std::int64_t n, std::int64_t m)
{
    const std::int64_t g = gcd64(n, m);
    n /= g;
    m /= g;
    if (m == 1) return std::to_string(n);
    return std::to_string(n) + "/" + std::to_string(m);
}

} // namespace

std::string exponent_string(std::int64_t numerator, int grading)
{
    if (numerator == 0) return "1";
    const std::string e = fraction_string(numerator, grading);
    if (e == "1") return "q";
    if (e.find('/') != std::string::npos) return "q^(" + e + ")";
    return "q^" + e;
}

// ---------------------------------------------------------------------------

FracSeries::FracSeries() = default;

FracSeries FracSeries::zero(int grading, std::int64_t high, int weight)
{
    if (grading <= 0) throw PreconditionError("series grading must be positive");
    FracSeries f;
    f.grading_ = grading;
    f.high_ = std::min(high, kExact);
    f.weight_ = weight;
    return f;
}

FracSeries FracSeries::constant(const Cyclotomic &c, std::int64_t high, int weight)
{
    return monomial(c, 0, 1, high, weight);
}

FracSeries FracSeries::monomial(const Cyclotomic &c, std::int64_t numerator, int grading, std::int64_t high,
                                int weight)
{
    FracSeries f = zero(grading, high, weight);
    f.low_ = numerator;
    f.coeffs_.push_back(c);
    f.trim();
    return f;
}

FracSeries FracSeries::from_coefficients(int grading, std::int64_t low, std::vector<Cyclotomic> coeffs,
                                         std::int64_t high, int weight)
{
    FracSeries f = zero(grading, high, weight);
    f.low_ = low;
    f.coeffs_ = std::move(coeffs);
    f.trim();
    return f;
}

void FracSeries::trim()
{
    if (!is_exact() && !coeffs_.empty()) {
        const std::int64_t keep = high_ - low_;
        if (keep <= 0) coeffs_.clear();
        else if (static_cast<std::size_t>(keep) < coeffs_.size()) coeffs_.resize(static_cast<std::size_t>(keep));
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        low_ += static_cast<std::int64_t>(lead);
    }
    if (coeffs_.empty()) low_ = 0;
}

std::optional<std::int64_t> FracSeries::valuation() const
{
    if (coeffs_.empty()) return std::nullopt;
    return low_;
}

std::int64_t FracSeries::valuation_or_high() const
{
    return coeffs_.empty() ? high_ : low_;
}

std::optional<std::int64_t> FracSeries::last_nonzero() const
{
    if (coeffs_.empty()) return std::nullopt;
    return low_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
}

Cyclotomic FracSeries::coefficient(std::int64_t numerator) const
{
    if (numerator >= high_) {
        throw TruncationError("coefficient of " + exponent_string(numerator, grading_) +
                              " is beyond the known range (exponents < " + fraction_string(high_, grading_) + ")");
    }
    if (numerator < low_ || numerator >= low_ + static_cast<std::int64_t>(coeffs_.size())) return Cyclotomic();
    return coeffs_[static_cast<std::size_t>(numerator - low_)];
}

Cyclotomic FracSeries::coefficient_at(const Rational &exponent) const
{
    Rational scaled = exponent * grading_;
    if (scaled.get_den() != 1) {
        if (!is_exact() && exponent >= high_exponent()) {
            throw TruncationError("coefficient of q^" + exponent.get_str() + " is beyond the known range");
        }
        return Cyclotomic();
    }
    return coefficient(scaled.get_num().get_si());
}

std::vector<std::pair<std::int64_t, Cyclotomic>> FracSeries::terms() const
{
    std::vector<std::pair<std::int64_t, Cyclotomic>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!coeffs_[i].is_zero()) out.emplace_back(low_ + static_cast<std::int64_t>(i), coeffs_[i]);
    }
    return out;
}

FracSeries FracSeries::with_weight(int weight) const
{
    FracSeries f = *this;
    f.weight_ = weight;
    return f;
}

FracSeries FracSeries::with_grading(int grading) const
{
    if (grading <= 0) throw PreconditionError("series grading must be positive");
    FracSeries f = *this;
    f.grading_ = grading;
    return f;
}

FracSeries FracSeries::regraded(int new_grading) const
{
    if (new_grading <= 0 || new_grading % grading_ != 0) {
        throw PreconditionError("cannot regrade from " + std::to_string(grading_) + " to " +
                                std::to_string(new_grading));
    }
    if (new_grading == grading_) return *this;
    const std::int64_t s = new_grading / grading_;
    FracSeries f = zero(new_grading, sat_mul(high_, s), weight_);
    if (coeffs_.empty()) return f;
    f.low_ = low_ * s;
    f.coeffs_.assign((coeffs_.size() - 1) * static_cast<std::size_t>(s) + 1, Cyclotomic());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) f.coeffs_[i * static_cast<std::size_t>(s)] = coeffs_[i];
    return f;
}

FracSeries FracSeries::canonical() const
{
    std::int64_t g = grading_;
    for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i) {
        if (!coeffs_[i].is_zero()) g = gcd64(g, low_ + static_cast<std::int64_t>(i));
    }
    if (g == 1) return *this;
    FracSeries f = zero(static_cast<int>(grading_ / g), is_exact() ? kExact : floor_div(high_, g), weight_);
    if (coeffs_.empty()) return f;
    f.low_ = low_ / g;
    f.coeffs_.reserve(coeffs_.size() / static_cast<std::size_t>(g) + 1);
    for (std::size_t i = 0; i < coeffs_.size(); i += static_cast<std::size_t>(g)) f.coeffs_.push_back(coeffs_[i]);
    f.trim();
    return f;
}

FracSeries FracSeries::simplified_fields() const
{
    FracSeries f = *this;
    for (auto &c : f.coeffs_) c = c.simplified();
    return f;
}

FracSeries FracSeries::truncated(std::int64_t high) const
{
    FracSeries f = *this;
    f.high_ = std::min(high_, high);
    f.trim();
    return f;
}

FracSeries FracSeries::truncated_at(const Rational &bound) const
{
    Rational scaled = bound * grading_;
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return truncated(c.get_si());
}

unsigned FracSeries::field_order() const
{
    std::int64_t l = 1;
    for (const auto &c : coeffs_) l = lcm64(l, c.order());
    return static_cast<unsigned>(l);
}

bool FracSeries::all_rational() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Cyclotomic &c) { return c.is_rational(); });
}

bool FracSeries::all_integral() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Cyclotomic &c) { return c.is_rational() && c.is_integral(); });
}

std::complex<double> FracSeries::evaluate(std::complex<double> tau) const
{
    const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        const double r = static_cast<double>(low_ + static_cast<std::int64_t>(i)) / grading_;
        sum += coeffs_[i].embed_complex() * std::exp(two_pi_i * tau * r);
    }
    return sum;
}

FracSeries FracSeries::operator-() const
{
    FracSeries f = *this;
    for (auto &c : f.coeffs_) c = -c;
    return f;
}

FracSeries &FracSeries::operator+=(const FracSeries &other)
{
    const int w = merge_weight(*this, other);
    const int l = static_cast<int>(lcm64(grading_, other.grading_));
    FracSeries a = regraded(l);
    const FracSeries b = other.regraded(l);
    a.weight_ = w;
    a.high_ = std::min(a.high_, b.high_);
    if (!b.coeffs_.empty()) {
        if (a.coeffs_.empty()) {
            a.low_ = b.low_;
            a.coeffs_ = b.coeffs_;
        } else {
            const std::int64_t lo = std::min(a.low_, b.low_);
            const std::int64_t hi = std::max(a.low_ + static_cast<std::int64_t>(a.coeffs_.size()),
                                             b.low_ + static_cast<std::int64_t>(b.coeffs_.size()));
            std::vector<Cyclotomic> sum(static_cast<std::size_t>(hi - lo));
            for (std::size_t i = 0; i < a.coeffs_.size(); ++i) sum[a.low_ - lo + i] = std::move(a.coeffs_[i]);
            for (std::size_t i = 0; i < b.coeffs_.size(); ++i) sum[b.low_ - lo + i] += b.coeffs_[i];
            a.low_ = lo;
            a.coeffs_ = std::move(sum);
        }
    }
    a.trim();
    return *this = std::move(a);
}

FracSeries &FracSeries::operator-=(const FracSeries &other)
{
    return *this += -other;
}

FracSeries &FracSeries::operator*=(const FracSeries &other)
{
    return *this = ser_mul(*this, other);
}

FracSeries &FracSeries::operator*=(const Cyclotomic &scalar)
{
    if (scalar.is_zero()) {
        coeffs_.clear();
        low_ = 0;
        return *this;
    }
    for (auto &c : coeffs_) c *= scalar;
    return *this;
}

FracSeries operator*(const FracSeries &a, const FracSeries &b)
{
    return ser_mul(a, b);
}

std::string FracSeries::to_string(std::size_t max_terms) const
{
    std::ostringstream out;
    std::size_t shown = 0;
    for (std::size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
        const Cyclotomic &c = coeffs_[i];
        if (c.is_zero()) continue;
        const std::int64_t n = low_ + static_cast<std::int64_t>(i);
        std::string cs = c.to_string();
        bool compound = !c.is_rational();
        if (!compound && cs[0] == '-') {
            out << (shown > 0 ? " - " : "-");
            cs = cs.substr(1);
        } else if (shown > 0) {
            out << " + ";
        }
        const std::string e = exponent_string(n, grading_);
        if (n == 0) out << (compound ? "(" + cs + ")" : cs);
        else if (cs == "1") out << e;
        else out << (compound ? "(" + cs + ")" : cs) << "*" << e;
        ++shown;
    }
    if (shown < terms().size()) out << (shown > 0 ? " + ..." : "...");
    if (!is_exact()) out << (shown > 0 ? " + " : "") << "O(" << exponent_string(high_, grading_) << ")";
    else if (shown == 0) out << "0";
    return out.str();
}

// ---------------------------------------------------------------------------

FracSeries ser_add(const FracSeries &f, const FracSeries &g)
{
    return f + g;
}

FracSeries ser_scale(const FracSeries &f, const Cyclotomic &c)
{
    return f * c;
}

namespace {

enum class CoeffKind { Integer, Rational, Cyclotomic };

CoeffKind kind_of(const FracSeries &f)
{
    if (f.all_integral()) return CoeffKind::Integer;
    if (f.all_rational()) return CoeffKind::Rational;
    return CoeffKind::Cyclotomic;
}

// Dense integer vectors representing coefficients over Q(zeta_L), scaled by a
// common denominator: coefficient i = (sum_j v[i][j] z^j) / denom.
struct IntegerImage {
    std::int64_t low = 0;
    std::vector<std::vector<Integer>> v;
    Integer denom = 1;
    std::vector<bool> nonzero;
};

IntegerImage integer_image(const FracSeries &f, unsigned field, std::size_t count)
{
    IntegerImage img;
    img.low = f.valuation().value_or(0);
    const std::size_t width = euler_phi(field);
    std::vector<std::vector<Rational>> coords(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Cyclotomic c = f.coefficient(img.low + static_cast<std::int64_t>(i));
        if (c.is_zero()) continue;
        coords[i] = c.coordinates_in(field);
        for (const auto &x : coords[i]) {
            if (x.get_den() != 1) mpz_lcm(img.denom.get_mpz_t(), img.denom.get_mpz_t(), x.get_den_mpz_t());
        }
    }
    img.v.assign(count, {});
    img.nonzero.assign(count, false);
    for (std::size_t i = 0; i < count; ++i) {
        if (coords[i].empty()) continue;
        img.nonzero[i] = true;
        img.v[i].resize(width);
        for (std::size_t j = 0; j < width; ++j) {
            const Rational &x = coords[i][j];
            if (sgn(x) == 0) continue;
            Integer t = img.denom / x.get_den();
            img.v[i][j] = t * x.get_num();
        }
    }
    return img;
}

} // namespace

FracSeries ser_mul(const FracSeries &f0, const FracSeries &g0)
{
    const int w = f0.weight() + g0.weight();
    const int l = static_cast<int>(lcm64(f0.grading(), g0.grading()));
    const FracSeries f = f0.regraded(l);
    const FracSeries g = g0.regraded(l);
    const std::int64_t high = std::min(sat_add(f.high(), g.valuation_or_high()),
                                       sat_add(g.high(), f.valuation_or_high()));
    if (f.is_zero() || g.is_zero()) return FracSeries::zero(l, high, w);

    const std::int64_t vf = *f.valuation(), vg = *g.valuation();
    const std::int64_t lo = vf + vg;
    const std::int64_t top = std::min<std::int64_t>(high, *f.last_nonzero() + *g.last_nonzero() + 1);
    if (top <= lo) return FracSeries::zero(l, high, w);
    const std::size_t out_len = static_cast<std::size_t>(top - lo);
    const std::size_t nf = std::min<std::size_t>(static_cast<std::size_t>(*f.last_nonzero() - vf + 1), out_len);
    const std::size_t ng = std::min<std::size_t>(static_cast<std::size_t>(*g.last_nonzero() - vg + 1), out_len);

    const CoeffKind kf = kind_of(f), kg = kind_of(g);
    const unsigned field = (kf == CoeffKind::Cyclotomic || kg == CoeffKind::Cyclotomic)
                               ? static_cast<unsigned>(lcm64(f.field_order(), g.field_order()))
                               : 1u;
    const IntegerImage a = integer_image(f, field, nf);
    const IntegerImage b = integer_image(g, field, ng);
    const std::size_t width = euler_phi(field);
    const Integer denom = a.denom * b.denom;
    const auto phi = cyclotomic_polynomial(field);

    std::vector<Cyclotomic> out(out_len);
    std::vector<Integer> acc(width == 1 ? 1 : 2 * width - 1);
    for (std::size_t n = 0; n < out_len; ++n) {
        for (auto &x : acc) x = 0;
        const std::size_t i_min = n >= ng ? n - ng + 1 : 0;
        const std::size_t i_max = std::min(n, nf - 1);
        bool any = false;
        for (std::size_t i = i_min; i <= i_max && i < nf; ++i) {
            const std::size_t j = n - i;
            if (!a.nonzero[i] || !b.nonzero[j]) continue;
            any = true;
            const auto &x = a.v[i];
            const auto &y = b.v[j];
            if (width == 1) {
                mpz_addmul(acc[0].get_mpz_t(), x[0].get_mpz_t(), y[0].get_mpz_t());
                continue;
            }
            for (std::size_t s = 0; s < width; ++s) {
                if (sgn(x[s]) == 0) continue;
                for (std::size_t t = 0; t < width; ++t) {
                    if (sgn(y[t]) != 0) mpz_addmul(acc[s + t].get_mpz_t(), x[s].get_mpz_t(), y[t].get_mpz_t());
                }
            }
        }
        if (!any) continue;
        if (width == 1) {
            out[n] = Cyclotomic(Rational(acc[0], denom));
            continue;
        }
        std::vector<Integer> red = acc;
        reduce_mod_cyclotomic(red, phi);
        std::vector<Rational> coords(width);
        for (std::size_t s = 0; s < width; ++s) {
            coords[s] = Rational(red[s], denom);
            coords[s].canonicalize();
        }
        out[n] = Cyclotomic::from_reduced(field, std::move(coords));
    }
    for (auto &c : out) {
        if (c.is_rational() && !c.is_zero()) {
            Rational r = c.to_rational();
            r.canonicalize();
            c = Cyclotomic(r);
        }
    }
    return FracSeries::from_coefficients(l, lo, std::move(out), high, w);
}

namespace {

std::int64_t require_bound(const FracSeries &f, std::optional<std::int64_t> max_high, std::int64_t natural,
                           const char *what)
{
    std::int64_t h = natural;
    if (max_high) h = std::min(h, *max_high);
    if (h >= kExact) {
        throw PreconditionError(std::string(what) + " of an exact series with several terms needs an explicit bound");
    }
    (void)f;
    return h;
}

} // namespace

FracSeries ser_inv(const FracSeries &f, std::optional<std::int64_t> max_high)
{
    if (f.is_zero()) throw DivisionByZero("cannot invert a series with no known nonzero coefficient");
    const std::int64_t v = *f.valuation();
    const Cyclotomic u = f.coefficient(v);
    const Cyclotomic u_inv = u.inverse();
    if (f.is_exact() && *f.last_nonzero() == v) {
        FracSeries r = FracSeries::monomial(u_inv, -v, f.grading(), kExact, -f.weight());
        if (max_high) r = r.truncated(*max_high);
        return r;
    }
    const std::int64_t natural = f.is_exact() ? kExact : f.high() - 2 * v;
    const std::int64_t high = require_bound(f, max_high, natural, "inverse");
    // f = u q^v (1 + h); invert 1 + h term by term.
    const std::int64_t count = high + v;
    if (count <= 0) return FracSeries::zero(f.grading(), high, -f.weight());
    const std::size_t n_terms = static_cast<std::size_t>(count);
    const FracSeries h = f * u_inv;
    std::vector<Cyclotomic> out(n_terms);

    const std::int64_t last = *h.last_nonzero();
    const std::size_t h_len = static_cast<std::size_t>(std::min<std::int64_t>(last - v + 1, count));
    if (h.all_integral()) {
        std::vector<Integer> hc(h_len), b(n_terms);
        for (std::size_t k = 0; k < h_len; ++k) hc[k] = h.coefficient(v + static_cast<std::int64_t>(k)).to_rational().get_num();
        b[0] = 1;
        for (std::size_t n = 1; n < n_terms; ++n) {
            Integer acc = 0;
            for (std::size_t k = 1; k <= n && k < h_len; ++k) {
                if (sgn(hc[k]) != 0) mpz_submul(acc.get_mpz_t(), hc[k].get_mpz_t(), b[n - k].get_mpz_t());
            }
            b[n] = acc;
        }
        for (std::size_t n = 0; n < n_terms; ++n) {
            if (sgn(b[n]) != 0) out[n] = Cyclotomic(Rational(b[n])) * u_inv;
        }
    } else if (h.all_rational()) {
        std::vector<Rational> hc(h_len), b(n_terms);
        for (std::size_t k = 0; k < h_len; ++k) hc[k] = h.coefficient(v + static_cast<std::int64_t>(k)).to_rational();
        b[0] = 1;
        for (std::size_t n = 1; n < n_terms; ++n) {
            Rational acc = 0;
            for (std::size_t k = 1; k <= n && k < h_len; ++k) {
                if (sgn(hc[k]) != 0) acc -= hc[k] * b[n - k];
            }
            b[n] = acc;
        }
        for (std::size_t n = 0; n < n_terms; ++n) {
            if (sgn(b[n]) != 0) out[n] = Cyclotomic(b[n]) * u_inv;
        }
    } else {
        std::vector<Cyclotomic> hc(h_len), b(n_terms);
        for (std::size_t k = 0; k < h_len; ++k) hc[k] = h.coefficient(v + static_cast<std::int64_t>(k));
        b[0] = 1;
        for (std::size_t n = 1; n < n_terms; ++n) {
            Cyclotomic acc;
            for (std::size_t k = 1; k <= n && k < h_len; ++k) {
                if (!hc[k].is_zero()) acc -= hc[k] * b[n - k];
            }
            b[n] = acc;
        }
        for (std::size_t n = 0; n < n_terms; ++n) out[n] = b[n] * u_inv;
    }
    return FracSeries::from_coefficients(f.grading(), -v, std::move(out), high, -f.weight());
}

FracSeries ser_pow(const FracSeries &f, long exponent, std::optional<std::int64_t> max_high)
{
    if (exponent == 0) {
        FracSeries one = FracSeries::constant(Cyclotomic(1)).regraded(f.grading());
        return max_high ? one.truncated(*max_high) : one;
    }
    FracSeries base = exponent < 0 ? ser_inv(f, max_high) : f;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    std::optional<FracSeries> result;
    while (true) {
        if (e & 1UL) result = result ? *result * base : base;
        e >>= 1;
        if (e == 0) break;
        base = base * base;
    }
    return max_high ? result->truncated(*max_high) : *result;
}

namespace {

template <typename T>
T coeff_as(const Cyclotomic &c);

template <>
Rational coeff_as<Rational>(const Cyclotomic &c)
{
    return c.to_rational();
}

template <>
Cyclotomic coeff_as<Cyclotomic>(const Cyclotomic &c)
{
    return c;
}

bool is_zero_value(const Rational &r) { return sgn(r) == 0; }
bool is_zero_value(const Cyclotomic &c) { return c.is_zero(); }

template <typename T>
std::vector<Cyclotomic> exp_coefficients(const FracSeries &f, std::size_t n_terms)
{
    std::vector<T> fc(n_terms), e(n_terms);
    for (std::size_t k = 1; k < n_terms; ++k) fc[k] = coeff_as<T>(f.coefficient(static_cast<std::int64_t>(k)));
    e[0] = T(1);
    for (std::size_t n = 1; n < n_terms; ++n) {
        T acc = T(0);
        for (std::size_t k = 1; k <= n; ++k) {
            if (!is_zero_value(fc[k])) acc += T(Rational(static_cast<long>(k))) * fc[k] * e[n - k];
        }
        e[n] = acc * T(Rational(1, static_cast<long>(n)));
    }
    return std::vector<Cyclotomic>(e.begin(), e.end());
}

template <typename T>
std::vector<Cyclotomic> log_coefficients(const FracSeries &f, std::size_t n_terms)
{
    std::vector<T> fc(n_terms), l(n_terms);
    for (std::size_t k = 1; k < n_terms; ++k) fc[k] = coeff_as<T>(f.coefficient(static_cast<std::int64_t>(k)));
    for (std::size_t n = 1; n < n_terms; ++n) {
        T acc = T(Rational(static_cast<long>(n))) * fc[n];
        for (std::size_t k = 1; k < n; ++k) {
            if (!is_zero_value(fc[n - k])) acc -= T(Rational(static_cast<long>(k))) * l[k] * fc[n - k];
        }
        l[n] = acc * T(Rational(1, static_cast<long>(n)));
    }
    return std::vector<Cyclotomic>(l.begin(), l.end());
}

std::int64_t series_bound(const FracSeries &f, std::optional<std::int64_t> max_high, const char *what)
{
    std::int64_t h = f.high();
    if (max_high) h = std::min(h, *max_high);
    if (h >= kExact) throw PreconditionError(std::string(what) + " of an exact series needs an explicit bound");
    return h;
}

} // namespace

FracSeries ser_exp(const FracSeries &f, std::optional<std::int64_t> max_high)
{
    if (f.valuation() && *f.valuation() <= 0) {
        throw PreconditionError("exp needs an argument with strictly positive valuation");
    }
    if (f.is_zero()) {
        FracSeries one = FracSeries::constant(Cyclotomic(1)).regraded(f.grading());
        return one.truncated(max_high ? std::min(*max_high, f.high()) : f.high());
    }
    const std::int64_t high = series_bound(f, max_high, "exp");
    if (high <= 0) return FracSeries::zero(f.grading(), high);
    const std::size_t n = static_cast<std::size_t>(high);
    auto coeffs = f.all_rational() ? exp_coefficients<Rational>(f, n) : exp_coefficients<Cyclotomic>(f, n);
    return FracSeries::from_coefficients(f.grading(), 0, std::move(coeffs), high, 0);
}

FracSeries ser_log(const FracSeries &f, std::optional<std::int64_t> max_high)
{
    const std::int64_t high = series_bound(f, max_high, "log");
    if (high <= 0) return FracSeries::zero(f.grading(), high);
    if (!f.valuation() || *f.valuation() < 0 || f.coefficient(0) != Cyclotomic(1)) {
        throw PreconditionError("log needs an argument with constant term 1 and no negative powers");
    }
    const std::size_t n = static_cast<std::size_t>(high);
    auto coeffs = f.all_rational() ? log_coefficients<Rational>(f, n) : log_coefficients<Cyclotomic>(f, n);
    return FracSeries::from_coefficients(f.grading(), 0, std::move(coeffs), high, 0);
}

// ---------------------------------------------------------------------------

FracSeries mobius_substitute(const FracSeries &f, int a, std::int64_t b, int d)
{
    if (a <= 0 || d <= 0) throw PreconditionError("mobius_substitute needs positive a and d");
    const std::int64_t md = static_cast<std::int64_t>(f.grading()) * d;
    const auto terms = f.terms();
    const std::int64_t high = sat_mul(f.high(), a);
    if (terms.empty()) return FracSeries::zero(static_cast<int>(md), high, f.weight()).canonical();
    const std::int64_t lo = terms.front().first * a;
    const std::int64_t hi = terms.back().first * a;
    std::vector<Cyclotomic> out(static_cast<std::size_t>(hi - lo + 1));
    for (const auto &[n, c] : terms) {
        const std::int64_t e = mod_floor(mod_floor(n, md) * mod_floor(b, md), md);
        out[static_cast<std::size_t>(n * a - lo)] =
            e == 0 ? c : c * Cyclotomic::root_of_unity(static_cast<unsigned>(md), e);
    }
    return FracSeries::from_coefficients(static_cast<int>(md), lo, std::move(out), high, f.weight()).canonical();
}

void MobiusAccumulator::add(const FracSeries &f, int a, std::int64_t b, int d, const Rational &scalar)
{
    if (a <= 0 || d <= 0) throw PreconditionError("mobius_substitute needs positive a and d");
    if (sgn(scalar) == 0) return;
    const std::int64_t md = static_cast<std::int64_t>(f.grading()) * d;
    const unsigned field = static_cast<unsigned>(lcm64(md, f.field_order()));
    Bucket &bucket = buckets_[{static_cast<unsigned>(md), field, scalar}];
    bucket.high = std::min(bucket.high, sat_mul(f.high(), a));
    const std::int64_t step_root = field / md;
    const std::int64_t bb = mod_floor(b, md);
    for (const auto &[n, c] : f.terms()) {
        const std::int64_t shift = mod_floor(mod_floor(n, md) * bb, md) * step_root;
        const std::int64_t key = n * a;
        const unsigned co = c.order();
        const std::int64_t step_c = field / co;
        const auto &coords = c.coefficients();
        if (c.is_integral()) {
            auto &slot = bucket.int_slots[key];
            if (slot.empty()) slot.resize(field);
            for (std::size_t j = 0; j < coords.size(); ++j) {
                if (sgn(coords[j]) == 0) continue;
                slot[static_cast<std::size_t>((static_cast<std::int64_t>(j) * step_c + shift) % field)] +=
                    coords[j].get_num();
            }
        } else {
            auto &slot = bucket.rat_slots[key];
            if (slot.empty()) slot.resize(field);
            for (std::size_t j = 0; j < coords.size(); ++j) {
                if (sgn(coords[j]) == 0) continue;
                slot[static_cast<std::size_t>((static_cast<std::int64_t>(j) * step_c + shift) % field)] += coords[j];
            }
        }
    }
}

FracSeries MobiusAccumulator::result() const
{
    FracSeries total = FracSeries::zero(1, kExact, weight_);
    for (const auto &[key, bucket] : buckets_) {
        const auto &[md, field, scalar] = key;
        const auto phi = cyclotomic_polynomial(field);
        const std::size_t width = euler_phi(field);
        std::map<std::int64_t, Cyclotomic> coeffs;
        for (const auto &[n, slot] : bucket.int_slots) {
            std::vector<Integer> red = slot;
            reduce_mod_cyclotomic(red, phi);
            std::vector<Rational> coords(width);
            bool nonzero = false;
            for (std::size_t j = 0; j < width; ++j) {
                if (sgn(red[j]) == 0) continue;
                coords[j] = Rational(red[j]) * scalar;
                nonzero = true;
            }
            if (nonzero) coeffs[n] = Cyclotomic::from_reduced(field, std::move(coords));
        }
        for (const auto &[n, slot] : bucket.rat_slots) {
            std::vector<Rational> red = slot;
            reduce_mod_cyclotomic(red, phi);
            for (auto &x : red) x *= scalar;
            const Cyclotomic c = Cyclotomic::from_reduced(field, std::move(red));
            coeffs[n] += c;
        }
        std::vector<Cyclotomic> dense;
        std::int64_t lo = 0;
        if (!coeffs.empty()) {
            lo = coeffs.begin()->first;
            dense.resize(static_cast<std::size_t>(coeffs.rbegin()->first - lo + 1));
            for (auto &[n, c] : coeffs) dense[static_cast<std::size_t>(n - lo)] = c;
        }
        total += FracSeries::from_coefficients(static_cast<int>(md), lo, std::move(dense), bucket.high, weight_)
                     .canonical();
    }
    return total.canonical();
}

// ---------------------------------------------------------------------------

std::string SeriesComparison::range_string() const
{
    if (conclusive_high >= kExact) return "all exponents";
    return "exponents < " + fraction_string(conclusive_high, grading);
}

SeriesComparison compare_series(const FracSeries &a0, const FracSeries &b0)
{
    SeriesComparison cmp;
    cmp.grading = static_cast<int>(lcm64(a0.grading(), b0.grading()));
    const FracSeries a = a0.regraded(cmp.grading);
    const FracSeries b = b0.regraded(cmp.grading);
    cmp.conclusive_high = std::min(a.high(), b.high());
    std::vector<std::int64_t> keys;
    for (const auto &[n, c] : a.terms()) {
        if (n < cmp.conclusive_high) keys.push_back(n);
    }
    for (const auto &[n, c] : b.terms()) {
        if (n < cmp.conclusive_high) keys.push_back(n);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (std::int64_t n : keys) {
        if (a.coefficient(n) != b.coefficient(n)) {
            cmp.equal = false;
            cmp.first_mismatch = n;
            break;
        }
    }
    return cmp;
}

} // namespace qseries
