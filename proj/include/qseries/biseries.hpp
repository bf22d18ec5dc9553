#pragma once

// Truncated series in p^(1/m) whose coefficients are FracSeries in q.
// A p-numerator absent from the map has an exactly zero coefficient; numerators
// at or above p_high() are unknown.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qseries/series.hpp"

namespace qseries {

class BiSeries {
public:
    BiSeries() = default;
    static BiSeries zero(int p_grading = 1, std::int64_t p_high = kExact);
    static BiSeries one(std::int64_t p_high = kExact);
    static BiSeries monomial(std::int64_t p_numerator, const FracSeries &coefficient, int p_grading = 1,
                             std::int64_t p_high = kExact);

    int p_grading() const noexcept { return p_grading_; }
    std::int64_t p_high() const noexcept { return p_high_; }
    const std::map<std::int64_t, FracSeries> &coefficients() const noexcept { return coeffs_; }

    // Coefficient of p^(numerator/m); throws TruncationError past p_high().
    FracSeries coefficient(std::int64_t p_numerator) const;
    FracSeries coefficient_at(const Rational &p_exponent) const;
    // Smallest q-truncation bound (as an exponent) over the stored coefficients.
    Rational q_bound() const;

    std::optional<std::int64_t> valuation() const;
    BiSeries regraded(int p_grading) const;
    BiSeries truncated(std::int64_t p_high) const;
    // Replace every q-coefficient by its truncation to exponents < bound.
    BiSeries q_truncated_at(const Rational &bound) const;

    BiSeries operator-() const;
    BiSeries &operator+=(const BiSeries &other);
    BiSeries &operator-=(const BiSeries &other);
    BiSeries &operator*=(const FracSeries &q_scalar);

    friend BiSeries operator+(BiSeries a, const BiSeries &b) { return a += b; }
    friend BiSeries operator-(BiSeries a, const BiSeries &b) { return a -= b; }
    friend BiSeries operator*(const BiSeries &a, const BiSeries &b);
    friend BiSeries operator*(BiSeries a, const FracSeries &s) { return a *= s; }

private:
    void set(std::int64_t p_numerator, FracSeries value);

    int p_grading_ = 1;
    std::int64_t p_high_ = kExact;
    std::map<std::int64_t, FracSeries> coeffs_;
};

BiSeries bi_mul(const BiSeries &a, const BiSeries &b);
// exp of a series with strictly positive p-valuation.
BiSeries bi_exp(const BiSeries &f);
// log of a series with p-constant term exactly 1.
BiSeries bi_log(const BiSeries &f);
// Reciprocal of a series with invertible p-constant term.
BiSeries bi_inv(const BiSeries &f);

struct BiComparison {
    bool equal = true;
    int p_grading = 1;
    std::int64_t p_high = kExact;
    Rational q_bound = 0; // smallest conclusive q exponent bound over compared rows
    bool q_exact = true;
    std::optional<std::int64_t> mismatch_p;
    std::optional<std::int64_t> mismatch_q; // numerator in mismatch_q_grading
    int mismatch_q_grading = 1;
    std::string range_string() const;
    std::string mismatch_string() const;
};

BiComparison compare_biseries(const BiSeries &a, const BiSeries &b);

} // namespace qseries
