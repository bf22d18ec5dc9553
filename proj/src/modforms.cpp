#include "qseries/modforms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "qseries/errors.hpp"

namespace qseries {

Rational sigma(int k, std::int64_t n)
{
    if (n < 1) throw PreconditionError("sigma needs n >= 1");
    Rational s = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        const std::int64_t e = n / d;
        for (std::int64_t x : {d, e}) {
            Integer p;
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(std::abs(k)));
            s += k >= 0 ? Rational(p) : Rational(Integer(1), p);
            if (d == e) break;
        }
    }
    s.canonicalize();
    return s;
}

std::complex<double> sigma_complex(std::complex<double> k, std::int64_t n)
{
    if (n < 1) throw PreconditionError("sigma needs n >= 1");
    std::complex<double> s = 0.0;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d == 0) s += std::exp(k * std::log(static_cast<double>(d)));
    }
    return s;
}

Rational binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0) return 0;
    Rational r = 1;
    for (std::int64_t i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
    r.canonicalize();
    return r;
}

Rational bernoulli(int n)
{
    if (n < 0) throw PreconditionError("Bernoulli index must be nonnegative");
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    while (static_cast<int>(table.size()) <= n) {
        const std::int64_t m = static_cast<std::int64_t>(table.size());
        Rational acc = 0;
        for (std::int64_t j = 0; j < m; ++j) acc += binomial(m + 1, j) * table[static_cast<std::size_t>(j)];
        Rational b = -acc / Rational(m + 1);
        b.canonicalize();
        table.push_back(b);
    }
    return table[static_cast<std::size_t>(n)];
}

Rational bernoulli_poly(int n, const Rational &x)
{
    Rational s = 0;
    std::vector<Rational> powers(static_cast<std::size_t>(n) + 1);
    powers[0] = 1;
    for (int i = 1; i <= n; ++i) powers[static_cast<std::size_t>(i)] = powers[static_cast<std::size_t>(i) - 1] * x;
    for (int j = 0; j <= n; ++j) s += binomial(n, j) * bernoulli(j) * powers[static_cast<std::size_t>(n - j)];
    s.canonicalize();
    return s;
}

FracSeries eisenstein(int k, std::int64_t order)
{
    if (k < 4 || k % 2 != 0) throw PreconditionError("eisenstein needs even k >= 4");
    const Rational factor = Rational(-2 * k) / bernoulli(k);
    std::vector<Cyclotomic> coeffs(static_cast<std::size_t>(std::max<std::int64_t>(order, 0)));
    if (order > 0) coeffs[0] = 1;
    for (std::int64_t n = 1; n < order; ++n) coeffs[static_cast<std::size_t>(n)] = Cyclotomic(factor * sigma(k - 1, n));
    return FracSeries::from_coefficients(1, 0, std::move(coeffs), order, k);
}

std::string eisenstein_scalar(int k)
{
    return "2*zeta(" + std::to_string(k) + ")";
}

FracSeries jfunction(std::int64_t order)
{
    // 1728 E4^3/(E4^3 - E6^2) loses two exponents: one to the inverse, one to the product.
    const std::int64_t h = order + 2;
    const FracSeries e4 = eisenstein(4, h);
    const FracSeries e6 = eisenstein(6, h);
    const FracSeries e4c = e4 * e4 * e4;
    const FracSeries disc = e4c - e6 * e6;
    FracSeries j = e4c * ser_inv(disc) * Cyclotomic(1728) - FracSeries::constant(Cyclotomic(744));
    return j.truncated(order);
}

int EtaQuotientSpec::weight() const
{
    int total = 0;
    for (const auto &f : factors) total += f.second;
    if (total % 2 != 0) throw PreconditionError("eta quotient of half-integral weight");
    return total / 2;
}

Rational EtaQuotientSpec::leading_exponent() const
{
    Rational l = 0;
    for (const auto &[a, e] : factors) l += a * e;
    l /= 24;
    l.canonicalize();
    return l;
}

FracSeries eta_quotient(const EtaQuotientSpec &spec, std::int64_t order)
{
    const int weight = spec.weight();
    const Rational lead = spec.leading_exponent();
    for (const auto &[a, e] : spec.factors) {
        if (sgn(a) <= 0) throw PreconditionError("eta quotient scales must be positive");
    }
    // Smallest grading fitting every scale and the leading exponent.
    std::int64_t m = 1;
    for (const auto &[a, e] : spec.factors) m = lcm64(m, a.get_den().get_si());
    m = lcm64(m, lead.get_den().get_si());
    if (spec.grading) {
        if (*spec.grading <= 0 || *spec.grading % m != 0) {
            throw PreconditionError("eta quotient exponents do not lie in (1/" + std::to_string(*spec.grading) +
                                    ")Z");
        }
        m = *spec.grading;
    }
    if (sgn(spec.constant_shift) != 0 && weight != 0) {
        throw PreconditionError("constant shift on an eta quotient of nonzero weight");
    }
    const Rational lead_scaled = lead * m;
    const std::int64_t lead_num = lead_scaled.get_num().get_si();
    const std::int64_t high = sat_mul(order, m);
    const std::int64_t len = high - lead_num;

    FracSeries prod = FracSeries::zero(static_cast<int>(m), high, weight);
    if (len > 0) {
        // x P'/P = sum_N D(N) x^N for P = prod (1 - x^(s n))^e, x = q^(1/m), s = a m.
        const std::size_t L = static_cast<std::size_t>(len);
        std::vector<Integer> dlog(L);
        for (const auto &[a, e] : spec.factors) {
            const std::int64_t s = Rational(a * m).get_num().get_si();
            for (std::int64_t n = s; n < len; n += s) {
                Integer t = sigma(1, n / s).get_num();
                dlog[static_cast<std::size_t>(n)] -= t * static_cast<long>(e) * static_cast<long>(s);
            }
        }
        std::vector<Integer> p(L);
        p[0] = 1;
        for (std::size_t n = 1; n < L; ++n) {
            Integer acc = 0;
            for (std::size_t k = 1; k <= n; ++k) {
                if (sgn(dlog[k]) != 0 && sgn(p[n - k]) != 0) {
                    mpz_addmul(acc.get_mpz_t(), dlog[k].get_mpz_t(), p[n - k].get_mpz_t());
                }
            }
            mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
            p[n] = acc;
        }
        std::vector<Cyclotomic> coeffs(L);
        for (std::size_t n = 0; n < L; ++n) {
            if (sgn(p[n]) != 0) coeffs[n] = Cyclotomic(Rational(p[n]) * spec.multiplier);
        }
        prod = FracSeries::from_coefficients(static_cast<int>(m), lead_num, std::move(coeffs), high, weight);
    }
    if (sgn(spec.constant_shift) != 0) prod += FracSeries::constant(Cyclotomic(spec.constant_shift), kExact, weight);
    return prod;
}

// ---------------------------------------------------------------------------

Rational twisted_untwisted_ratio(int k)
{
    Rational r = -bernoulli(k) / Rational(k);
    r.canonicalize();
    return r;
}

std::string twisted_eisenstein_scalar(int k)
{
    return "(2*pi*i)^" + std::to_string(k) + "/" + std::to_string(k - 1) + "!";
}

std::complex<double> twisted_normalization(int k)
{
    double fact = 1;
    for (int i = 2; i < k; ++i) fact *= i;
    const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
    return fact / std::pow(two_pi_i, k);
}

FracSeries twisted_eisenstein(int k, int N, int i, int j, std::int64_t order)
{
    if (k < 3) throw PreconditionError("twisted Eisenstein series need k >= 3");
    if (N < 1) throw PreconditionError("twist order must be positive");
    const std::int64_t ii = mod_floor(i, N);
    const std::int64_t j1 = mod_floor(j, N);
    if (ii == 0 && j1 == 0 && k % 2 == 1) return FracSeries::zero(N, sat_mul(order, N), k);
    const std::int64_t j2 = mod_floor(N - j1, N);
    const std::int64_t high = sat_mul(order, N);

    // numerator -> coefficients of zeta_N^e
    std::map<std::int64_t, std::vector<Rational>> acc;
    auto add = [&](std::int64_t num, std::int64_t root, const Rational &c) {
        auto &v = acc[num];
        if (v.empty()) v.resize(static_cast<std::size_t>(N));
        v[static_cast<std::size_t>(mod_floor(root, N))] += c;
    };
    const Rational beta(j1, N);
    add(0, 0, -bernoulli_poly(k, beta) / Rational(k));
    const Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
    for (std::int64_t M = 1; M * (N - std::max(j1, j2)) < high; ++M) {
        for (std::int64_t r = 1;; ++r) {
            const std::int64_t base_a = r * N - j1;
            const std::int64_t base_b = r * N - j2;
            const bool a_ok = M * base_a < high;
            const bool b_ok = M * base_b < high;
            if (!a_ok && !b_ok) break;
            if (a_ok) {
                Integer pw;
                mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(base_a), static_cast<unsigned long>(k - 1));
                Integer den;
                mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(k - 1));
                add(M * base_a, ii * M, sign * Rational(pw, den));
            }
            if (b_ok) {
                Integer pw;
                mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(base_b), static_cast<unsigned long>(k - 1));
                Integer den;
                mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(k - 1));
                add(M * base_b, -ii * M, Rational(pw, den));
            }
        }
    }
    std::vector<Cyclotomic> coeffs;
    std::int64_t lo = acc.empty() ? 0 : acc.begin()->first;
    if (!acc.empty()) coeffs.resize(static_cast<std::size_t>(acc.rbegin()->first - lo + 1));
    for (auto &[num, v] : acc) {
        for (auto &x : v) x.canonicalize();
        coeffs[static_cast<std::size_t>(num - lo)] = Cyclotomic::from_powers(static_cast<unsigned>(N), v);
    }
    return FracSeries::from_coefficients(N, lo, std::move(coeffs), high, k);
}

std::complex<double> twisted_eisenstein_numeric(int k, std::complex<double> theta, std::complex<double> phi,
                                                std::complex<double> tau, int cutoff)
{
    if (k < 3) throw PreconditionError("lattice sum needs k >= 3");
    if (tau.imag() <= 0) throw PreconditionError("lattice sum needs Im(tau) > 0");
    const std::size_t width = static_cast<std::size_t>(2 * cutoff + 1);
    std::vector<std::complex<double>> tp(width), pp(width);
    for (int m = -cutoff; m <= cutoff; ++m) {
        tp[static_cast<std::size_t>(m + cutoff)] = std::pow(theta, m);
        pp[static_cast<std::size_t>(m + cutoff)] = std::pow(phi, m);
    }
    std::complex<double> total = 0.0;
    for (int m = -cutoff; m <= cutoff; ++m) {
        std::complex<double> row = 0.0;
        for (int n = -cutoff; n <= cutoff; ++n) {
            if (m == 0 && n == 0) continue;
            const std::complex<double> w = 1.0 / (static_cast<double>(m) * tau + static_cast<double>(n));
            std::complex<double> wk = w;
            for (int e = 1; e < k; ++e) wk *= w;
            row += pp[static_cast<std::size_t>(n + cutoff)] * wk;
        }
        total += tp[static_cast<std::size_t>(m + cutoff)] * row;
    }
    return total;
}

} // namespace qseries
