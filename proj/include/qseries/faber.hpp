#pragma once

// Faber polynomials of a normalized series t = q^-1 + 0 + a(1) q + a(2) q^2 + ...
// P_n is the unique monic degree-n polynomial with P_n(t) = q^-n + O(q).

#include <optional>
#include <string>
#include <vector>

#include "qseries/series.hpp"

namespace qseries {

struct FaberPoly {
    std::vector<Cyclotomic> coefficients; // x^0 .. x^n

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    // Horner evaluation at a series (any grading).
    FracSeries evaluate(const FracSeries &x) const;
    // e.g. "x^3 - 590652*x - 64481280"
    std::string to_string(const std::string &var = "x") const;
};

// Greedy elimination on powers of t. Throws PreconditionError when t is not
// integrally graded, does not start with 1*q^-1, has nonzero constant term,
// or (TruncationError) is known to fewer than n exponents past q^0.
FaberPoly faber(const FracSeries &t, int n);
// P_1 .. P_n_max sharing the powers of t; element k-1 is P_k.
std::vector<FaberPoly> faber_all(const FracSeries &t, int n_max);

struct FaberGeneratingResult {
    bool equal = true;
    int n_max = 0;
    std::optional<int> mismatch_power; // first p-power with differing polynomial coefficient
    std::string detail;
};

// Checks exp(-sum_{n<=n_max} p^n/n P_n(x)) = p (t(p) - x) through p^n_max with x formal.
FaberGeneratingResult faber_generating_check(const FracSeries &t, int n_max);

// Polynomials in one formal variable with cyclotomic coefficients (lowest degree first).
using FormalPoly = std::vector<Cyclotomic>;
FormalPoly formal_add(const FormalPoly &a, const FormalPoly &b);
FormalPoly formal_mul(const FormalPoly &a, const FormalPoly &b);
FormalPoly formal_scale(const FormalPoly &a, const Cyclotomic &c);
bool formal_equal(const FormalPoly &a, const FormalPoly &b);
std::string formal_to_string(const FormalPoly &a, const std::string &var = "x");

} // namespace qseries
