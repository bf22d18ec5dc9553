#pragma once

// Classical Hecke operators on integrally graded series, twisted Hecke and
// homothety operators on (Z/N)^2-indexed families.
//
//   T(n) f(tau) = 1/n sum_{ad=n} a^k sum_{0<=b<d} f((a tau + b)/d)
//   T(n) f((i,j), tau) = 1/n sum_{ad=n} a^k sum_b f((a i + b j, d j), (a tau + b)/d)
//   R(n) f((i,j), tau) = f((n i, n j), tau)

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qseries/check.hpp"
#include "qseries/series.hpp"

namespace qseries {

class TwistedFamily {
public:
    using Index = std::pair<int, int>;

    TwistedFamily() = default;
    TwistedFamily(int order, int weight) : order_(order), weight_(weight) {}

    int order() const noexcept { return order_; }
    int weight() const noexcept { return weight_; }
    const std::map<Index, FracSeries> &entries() const noexcept { return entries_; }

    Index normalize(int i, int j) const;
    bool contains(int i, int j) const;
    const FracSeries &at(int i, int j) const; // throws PreconditionError when missing
    void set(int i, int j, FracSeries f);     // checks the weight tag

private:
    int order_ = 1;
    int weight_ = 0;
    std::map<Index, FracSeries> entries_;
};

// Full (Z/N)^2 family of normalized twisted Eisenstein series.
TwistedFamily twisted_eisenstein_family(int k, int N, std::int64_t order);

FracSeries hecke_classical(int k, int n, const FracSeries &f);
// Coefficient formula c'(M) = sum_{a | gcd(n, M)} a^(k-1) c(n M / a^2).
FracSeries hecke_divisor_form(int k, int n, const FracSeries &f);

TwistedFamily hecke_twisted(const TwistedFamily &family, int n);
TwistedFamily homothety(const TwistedFamily &family, int n);

// Entry (i,j) of the T-generator image: f((i+j, j), tau) against f((i,j), tau - 1).
std::vector<Check> twisted_t_consistency(const TwistedFamily &family, const std::string &id_prefix);
// f((i,j), tau) = tau^-k f((-j, i), -1/tau), evaluated numerically.
std::vector<Check> twisted_s_consistency(const TwistedFamily &family, const std::string &id_prefix,
                                         double tolerance = 1e-6, std::int64_t truncation = 40);

// T(m)T(n) = T(mn) for coprime 2 <= m < n, mn <= max_product and both <= max_factor;
// T(p)T(p^m) = T(p^{m+1}) + p^{k-1} T(p^{m-1}) for the given primes and m <= max_power.
std::vector<Check> verify_hecke_algebra_classical(const FracSeries &f, const std::string &label,
                                                  int max_factor, const std::vector<int> &primes, int max_power);
// Twisted relations: coprime multiplicativity, T(p)T(p^m) = T(p^{m+1}) + p^{k-1} T(p^{m-1}) R(p),
// R(m)R(n) = R(mn) and R(m)T(n) = T(n)R(m).
std::vector<Check> verify_hecke_algebra_twisted(const TwistedFamily &family, const std::string &label,
                                                const std::vector<int> &primes, int max_power,
                                                const std::vector<std::pair<int, int>> &coprime_pairs);

// T(n) t = (1/n) P_n(t) for t = q^-1 + c + ..., recentered by its constant term c.
Check replication_check(const FracSeries &t, int n, const std::string &label);

} // namespace qseries
