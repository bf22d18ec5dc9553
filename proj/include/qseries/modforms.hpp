#pragma once

// Eisenstein series, eta quotients, the J function and twisted Eisenstein series.
//
// All series are stored normalized so coefficients stay exact:
//   E_k          = G_k / (2 zeta(k))
//   Ghat_k(i,j)  = ((k-1)! / (2 pi i)^k) * G_k((zeta_N^i, zeta_N^j), tau)
// so Ghat_k(0,0) = (-B_k / k) * E_k.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qseries/series.hpp"

namespace qseries {

Rational sigma(int k, std::int64_t n);       // sum_{d | n} d^k, k may be negative
std::complex<double> sigma_complex(std::complex<double> k, std::int64_t n);

Rational bernoulli(int n);                    // B_1 = -1/2
Rational bernoulli_poly(int n, const Rational &x);
Rational binomial(std::int64_t n, std::int64_t k);

// Normalized E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n, exponents < order.
FracSeries eisenstein(int k, std::int64_t order);
// Symbolic scalar s with G_k = s * E_k.
std::string eisenstein_scalar(int k);

// J = 1728 E_4^3 / (E_4^3 - E_6^2) - 744, exponents < order.
FracSeries jfunction(std::int64_t order);

struct EtaQuotientSpec {
    std::vector<std::pair<Rational, int>> factors; // (scale a, exponent e): prod eta(a tau)^e
    Rational constant_shift = 0;
    Rational multiplier = 1;
    std::optional<int> grading; // declared; default is the smallest grading that fits

    int weight() const;
    Rational leading_exponent() const; // sum e a / 24
};

// multiplier * prod eta(a tau)^e + constant_shift, exponents < order.
FracSeries eta_quotient(const EtaQuotientSpec &spec, std::int64_t order);

// Normalized twisted Eisenstein series Ghat_k((zeta_N^i, zeta_N^j), tau) in grading N, exponents < order.
FracSeries twisted_eisenstein(int k, int N, int i, int j, std::int64_t order);
// Symbolic scalar s with G_k((theta, phi), tau) = s * Ghat_k.
std::string twisted_eisenstein_scalar(int k);
// Exact ratio Ghat_k(0,0) / E_k = -B_k / k.
Rational twisted_untwisted_ratio(int k);
// (k-1)! / (2 pi i)^k as a complex number.
std::complex<double> twisted_normalization(int k);

// Raw lattice sum sum_{|m|,|n| <= cutoff, (m,n) != 0} theta^m phi^n / (m tau + n)^k.
std::complex<double> twisted_eisenstein_numeric(int k, std::complex<double> theta, std::complex<double> phi,
                                                std::complex<double> tau, int cutoff);

} // namespace qseries
