#pragma once

// Truncated Laurent series in q^(1/m) with cyclotomic coefficients.
//
// A FracSeries with grading m stores coefficients c_n of q^(n/m) for integer
// numerators n. Coefficients with n >= high() are unknown (not zero); every
// operation propagates the tightest bound its inputs justify:
//   add:  min(high_f, high_g)
//   mul:  min(high_f + val_g, high_g + val_f)
//   inv:  high - 2 val
// Exact (non-truncated) series carry high() == kExact.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qseries/coeffring.hpp"

namespace qseries {

inline constexpr std::int64_t kExact = std::int64_t{1} << 60;

std::int64_t sat_add(std::int64_t a, std::int64_t b);
std::int64_t sat_mul(std::int64_t a, std::int64_t b);

class FracSeries {
public:
    FracSeries(); // exact zero, grading 1, weight 0

    static FracSeries zero(int grading = 1, std::int64_t high = kExact, int weight = 0);
    static FracSeries constant(const Cyclotomic &c, std::int64_t high = kExact, int weight = 0);
    static FracSeries monomial(const Cyclotomic &c, std::int64_t numerator, int grading = 1,
                               std::int64_t high = kExact, int weight = 0);
    // coeffs[i] is the coefficient of q^((low + i)/grading).
    static FracSeries from_coefficients(int grading, std::int64_t low, std::vector<Cyclotomic> coeffs,
                                        std::int64_t high = kExact, int weight = 0);

    int grading() const noexcept { return grading_; }
    int weight() const noexcept { return weight_; }
    std::int64_t high() const noexcept { return high_; }
    bool is_exact() const noexcept { return high_ >= kExact; }
    // Exclusive bound on known exponents as a rational (meaningless when exact).
    Rational high_exponent() const { return ratio(high_, grading_); }

    // First numerator with a nonzero coefficient; nullopt when all known coefficients vanish.
    std::optional<std::int64_t> valuation() const;
    // Valuation, or high() for a series with no known nonzero coefficient.
    std::int64_t valuation_or_high() const;
    // Last numerator with nonzero coefficient (nullopt for zero).
    std::optional<std::int64_t> last_nonzero() const;
    bool is_zero() const { return !valuation().has_value(); }

    // Coefficient of q^(numerator/grading); throws TruncationError past high().
    Cyclotomic coefficient(std::int64_t numerator) const;
    // Coefficient of q^exponent; zero when exponent is not a multiple of 1/grading.
    Cyclotomic coefficient_at(const Rational &exponent) const;

    // Nonzero coefficients in increasing numerator order.
    std::vector<std::pair<std::int64_t, Cyclotomic>> terms() const;

    FracSeries with_weight(int weight) const;
    // Same coefficients reinterpreted over a different grading (q^(n/m) -> q^(n/m')).
    FracSeries with_grading(int grading) const;
    // Exact re-expression over a finer grading; grading must divide new_grading.
    FracSeries regraded(int new_grading) const;
    // Treat numerators as integer exponents: the series in the variable q^(1/m).
    FracSeries as_integral() const { return with_grading(1); }
    // Minimal grading; high is floored so re-refinement never claims unknown terms.
    FracSeries canonical() const;
    // Coefficients moved to their smallest cyclotomic fields.
    FracSeries simplified_fields() const;
    FracSeries truncated(std::int64_t high) const;
    // Truncate to exponents < bound (rational exponent bound).
    FracSeries truncated_at(const Rational &bound) const;

    // lcm of the coefficient field orders.
    unsigned field_order() const;
    bool all_rational() const;
    bool all_integral() const;

    std::complex<double> evaluate(std::complex<double> tau) const;

    FracSeries operator-() const;
    FracSeries &operator+=(const FracSeries &other);
    FracSeries &operator-=(const FracSeries &other);
    FracSeries &operator*=(const FracSeries &other);
    FracSeries &operator*=(const Cyclotomic &scalar);

    friend FracSeries operator+(FracSeries a, const FracSeries &b) { return a += b; }
    friend FracSeries operator-(FracSeries a, const FracSeries &b) { return a -= b; }
    friend FracSeries operator*(const FracSeries &a, const FracSeries &b);
    friend FracSeries operator*(FracSeries a, const Cyclotomic &c) { return a *= c; }
    friend FracSeries operator*(const Cyclotomic &c, FracSeries a) { return a *= c; }

    // Short human-readable rendering, e.g. "q^-1 + 196884*q + ... + O(q^3)".
    std::string to_string(std::size_t max_terms = 8) const;

private:
    void trim();

    int grading_ = 1;
    int weight_ = 0;
    std::int64_t low_ = 0;
    std::int64_t high_ = kExact;
    std::vector<Cyclotomic> coeffs_; // coeffs_[i] <-> numerator low_ + i
};

FracSeries ser_add(const FracSeries &f, const FracSeries &g);
FracSeries ser_mul(const FracSeries &f, const FracSeries &g);
FracSeries ser_scale(const FracSeries &f, const Cyclotomic &c);
// Integer power; negative exponents invert first (see ser_inv for max_high).
FracSeries ser_pow(const FracSeries &f, long exponent, std::optional<std::int64_t> max_high = std::nullopt);
// Reciprocal. Exact inputs with more than one term need max_high (numerator bound of the result).
FracSeries ser_inv(const FracSeries &f, std::optional<std::int64_t> max_high = std::nullopt);
// exp(f) for f with strictly positive valuation; exact inputs need max_high.
FracSeries ser_exp(const FracSeries &f, std::optional<std::int64_t> max_high = std::nullopt);
// log(f) for f = 1 + (strictly positive valuation); exact inputs need max_high.
FracSeries ser_log(const FracSeries &f, std::optional<std::int64_t> max_high = std::nullopt);

// One summand f((a tau + b)/d) of a Hecke sum: c q^(n/m) -> c zeta_{md}^(n b) q^(n a/(m d)).
FracSeries mobius_substitute(const FracSeries &f, int a, std::int64_t b, int d);

// Sum of scalar * mobius_substitute(f, a, b, d) over many terms, accumulated in
// the redundant root-of-unity basis and reduced once per output coefficient.
// It equals the literal sum of mobius_substitute results.
class MobiusAccumulator {
public:
    explicit MobiusAccumulator(int weight = 0) : weight_(weight) {}

    void add(const FracSeries &f, int a, std::int64_t b, int d, const Rational &scalar = Rational(1));
    FracSeries result() const;

private:
    struct Bucket {
        std::int64_t high = kExact;
        bool integral = true;
        std::map<std::int64_t, std::vector<Integer>> int_slots;
        std::map<std::int64_t, std::vector<Rational>> rat_slots;
    };
    // key: (target grading m*d, field order L, scalar)
    std::map<std::tuple<unsigned, unsigned, Rational>, Bucket> buckets_;
    int weight_;
};

struct SeriesComparison {
    bool equal = true;
    int grading = 1;                         // common grading of the comparison
    std::int64_t conclusive_high = kExact;   // numerators < this were compared
    std::optional<std::int64_t> first_mismatch;
    Rational conclusive_bound() const { return ratio(conclusive_high, grading); }
    std::string range_string() const;
};

// Exact comparison over the common known range of both series.
SeriesComparison compare_series(const FracSeries &a, const FracSeries &b);

// Human-readable exponent q^(n/m).
std::string exponent_string(std::int64_t numerator, int grading);

} // namespace qseries
