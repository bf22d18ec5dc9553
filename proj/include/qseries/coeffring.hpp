#pragma once

// Exact arithmetic in the rationals and in cyclotomic fields Q(zeta_N).
//
// A Cyclotomic stores an element of Q(zeta_N) in the power basis
// 1, z, ..., z^(phi(N)-1), reduced modulo the N-th cyclotomic polynomial.
// Mixed-order operands are promoted to the lcm of their orders. Results whose
// non-constant part vanishes are stored with order 1, so rational values
// always have a unique representation.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qseries {

using Rational = mpq_class;
using Integer = mpz_class;

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t b);

unsigned euler_phi(unsigned n);
std::vector<unsigned> divisors(unsigned n);

// Integer coefficients of Phi_n, lowest degree first; monic of degree phi(n).
std::vector<std::int64_t> cyclotomic_polynomial(unsigned n);

// n/d in canonical form; d != 0.
Rational ratio(std::int64_t n, std::int64_t d);

// Exact rational from a decimal string "a" or "a/b". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

class Cyclotomic {
public:
    Cyclotomic();
    Cyclotomic(const Rational &value); // NOLINT: rationals embed implicitly
    Cyclotomic(long value);            // NOLINT
    Cyclotomic(int value) : Cyclotomic(static_cast<long>(value)) {} // NOLINT

    // zeta_N^e for any integer e.
    static Cyclotomic root_of_unity(unsigned order, std::int64_t exponent);

    // Element with the given reduced coordinates (length phi(N)).
    static Cyclotomic from_reduced(unsigned order, std::vector<Rational> coords);

    // Element sum_j coeffs[j] * zeta_N^j for any length of coeffs (reduced here).
    static Cyclotomic from_powers(unsigned order, const std::vector<Rational> &coeffs);

    unsigned order() const noexcept { return order_; }
    // Reduced coordinates, length phi(order()).
    const std::vector<Rational> &coefficients() const noexcept { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const noexcept { return order_ == 1; }
    bool is_integral() const; // all coordinates are integers
    Rational to_rational() const; // throws PreconditionError if not rational

    // Coordinates of the same element in the power basis of Q(zeta_M); requires order() | M.
    std::vector<Rational> coordinates_in(unsigned target_order) const;

    // The same element in the smallest Q(zeta_N') containing it.
    Cyclotomic simplified() const;
    // True if the element lies in Q(zeta_N') for the given divisor N' of order().
    bool lies_in(unsigned sub_order) const;

    // Galois conjugate zeta -> zeta^a, gcd(a, order) = 1.
    Cyclotomic galois(std::int64_t a) const;

    Cyclotomic inverse() const; // throws DivisionByZero

    Cyclotomic operator-() const;
    Cyclotomic &operator+=(const Cyclotomic &other);
    Cyclotomic &operator-=(const Cyclotomic &other);
    Cyclotomic &operator*=(const Cyclotomic &other);
    Cyclotomic &operator/=(const Cyclotomic &other);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic &b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic &b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic &b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic &b) { return a /= b; }

    friend bool operator==(const Cyclotomic &a, const Cyclotomic &b);
    friend bool operator!=(const Cyclotomic &a, const Cyclotomic &b) { return !(a == b); }

    // Value under zeta_N -> exp(2 pi i / N). Accurate to double precision;
    // precision (decimal digits) above 15 is not honoured beyond that.
    std::complex<double> embed_complex(int precision = 15) const;

    // Canonical rendering in the basis of zeta_N, N a multiple of order():
    // terms "c" (j = 0) and "c*z^j", j increasing, zero terms omitted, "0" for zero.
    std::string to_string(unsigned basis_order) const;
    std::string to_string() const { return to_string(order_); }

    // Strict inverse of to_string over Q(zeta_N): rejects non-reduced fractions,
    // out-of-order or repeated powers, explicit zero terms and j >= phi(N).
    static Cyclotomic parse(std::string_view text, unsigned basis_order);

private:
    Cyclotomic(unsigned order, std::vector<Rational> reduced);
    void normalize();

    unsigned order_;
    std::vector<Rational> coeffs_;
};

Cyclotomic cyc_add(const Cyclotomic &a, const Cyclotomic &b);
Cyclotomic cyc_mul(const Cyclotomic &a, const Cyclotomic &b);
Cyclotomic cyc_inv(const Cyclotomic &a);
std::complex<double> cyc_embed_complex(const Cyclotomic &a, int precision = 15);

// In-place reduction of an integer-coefficient polynomial (lowest degree first)
// modulo Phi_n; on return poly has size phi(n).
void reduce_mod_cyclotomic(std::vector<Rational> &poly, const std::vector<std::int64_t> &phi_n);
void reduce_mod_cyclotomic(std::vector<Integer> &poly, const std::vector<std::int64_t> &phi_n);

} // namespace qseries
