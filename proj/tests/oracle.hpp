#pragma once

// Naive reference computations on plain coefficient vectors, written
// independently of the library's series and Hecke machinery.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Z = mpz_class;
using Q = mpq_class;
using Vec = std::vector<Z>; // v[i] = coefficient of q^i

inline Vec mul(const Vec &a, const Vec &b, std::size_t n)
{
    Vec r(n, 0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

inline Z divisor_sum(int k, std::int64_t n)
{
    Z s = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        Z p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        s += p;
    }
    return s;
}

// E_4 = 1 + 240 sum sigma_3(n) q^n, E_6 = 1 - 504 sum sigma_5(n) q^n.
inline Vec e4(std::size_t n)
{
    Vec v(n, 0);
    v[0] = 1;
    for (std::size_t i = 1; i < n; ++i) v[i] = 240 * divisor_sum(3, static_cast<std::int64_t>(i));
    return v;
}

inline Vec e6(std::size_t n)
{
    Vec v(n, 0);
    v[0] = 1;
    for (std::size_t i = 1; i < n; ++i) v[i] = -504 * divisor_sum(5, static_cast<std::int64_t>(i));
    return v;
}

// prod_{m>=1} (1 - q^m)^24 (Delta / q).
inline Vec delta_over_q(std::size_t n)
{
    Vec v(n, 0);
    v[0] = 1;
    for (std::size_t m = 1; m < n; ++m) {
        for (int rep = 0; rep < 24; ++rep) {
            for (std::size_t i = n; i-- > m;) v[i] -= v[i - m];
        }
    }
    return v;
}

// Coefficients of J = E4^3 / Delta - 744 as c[i] for q^(i-1), i < n.
inline Vec jcoeffs(std::size_t n)
{
    const Vec e = e4(n);
    const Vec num = mul(mul(e, e, n), e, n);
    const Vec den = delta_over_q(n);
    Vec quo(n, 0); // num / den, den[0] = 1
    for (std::size_t i = 0; i < n; ++i) {
        Z s = num[i];
        for (std::size_t j = 1; j <= i; ++j) s -= den[j] * quo[i - j];
        quo[i] = s;
    }
    quo[1] -= 744;
    return quo;
}

// Coefficient of q^m of T(n)f for weight k: sum_{a | (n, m)} a^(k-1) c(nm/a^2),
// where c(e) is given for e >= low.
template <class Coeff>
Q hecke_coefficient(int k, std::int64_t n, std::int64_t m, Coeff c)
{
    Q s = 0;
    for (std::int64_t a = 1; a <= n; ++a) {
        if (n % a || m % a) continue;
        Q w = 1;
        for (int i = 0; i < k - 1; ++i) w *= a;
        for (int i = 0; i < 1 - k; ++i) w /= a;
        s += w * Q(c((n / a) * (m / a)));
    }
    return s;
}

} // namespace oracle
