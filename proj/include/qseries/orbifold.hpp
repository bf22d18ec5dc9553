#pragma once

// Trace functions Z((g,h), tau) on finite abelian groups, G-orbifolds,
// symmetric-group (permutation) orbifolds and their (p, q) generating functions.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qseries/biseries.hpp"
#include "qseries/check.hpp"
#include "qseries/series.hpp"

namespace qseries {

class AbelianGroup {
public:
    using Element = std::vector<int>;

    AbelianGroup() = default;
    explicit AbelianGroup(std::vector<int> factors); // invariant factors m1 | m2 | ...

    const std::vector<int> &factors() const noexcept { return factors_; }
    std::size_t size() const;
    Element identity() const { return Element(factors_.size(), 0); }
    Element normalize(Element e) const;
    Element mul(const Element &a, const Element &b) const;
    Element pow(const Element &a, std::int64_t e) const;
    Element inverse(const Element &a) const { return pow(a, -1); }
    int order_of(const Element &a) const;
    bool is_identity(const Element &a) const;
    std::vector<Element> elements() const;

    std::string element_string(const Element &a) const; // "1" / "0,1"
    Element parse_element(const std::string &text) const;
    std::string to_string() const;                      // "2" / "2 4"

private:
    std::vector<int> factors_;
};

class TraceFamily {
public:
    using Element = AbelianGroup::Element;
    using Pair = std::pair<Element, Element>;

    TraceFamily() = default;
    TraceFamily(std::string label, AbelianGroup group) : label_(std::move(label)), group_(std::move(group)) {}

    const std::string &label() const noexcept { return label_; }
    const AbelianGroup &group() const noexcept { return group_; }
    bool anomaly_free() const noexcept { return anomaly_free_; }
    void set_anomaly_free(bool a) { anomaly_free_ = a; }

    bool contains(const Element &g, const Element &h) const;
    const FracSeries &at(const Element &g, const Element &h) const; // throws PreconditionError naming the pair
    void set(const Element &g, const Element &h, FracSeries f);
    const std::map<Pair, FracSeries> &entries() const noexcept { return entries_; }

    void set_fricke(const Element &h, bool fricke) { fricke_[group_.normalize(h)] = fricke; }
    std::optional<bool> fricke(const Element &h) const;

    std::string pair_string(const Element &g, const Element &h) const;

private:
    std::string label_;
    AbelianGroup group_;
    bool anomaly_free_ = true;
    std::map<Pair, FracSeries> entries_;
    std::map<Element, bool> fricke_;
};

struct CycleType {
    std::vector<int> multiplicities; // multiplicities[k-1] = m_k

    int size() const;
    Integer centralizer_order() const; // prod k^m_k m_k!
    std::string to_string() const;     // e.g. "1^2 2^1"
};

std::vector<CycleType> partitions(int n);

FracSeries g_orbifold_partition(const TraceFamily &family);

// sum over cycle types of prod_k (1/m_k!) (T(k) Z)^m_k, classical weight-0 T(k).
FracSeries perm_orbifold(const FracSeries &Z, int n);

// Generating functions in (p, q); "through" bounds are inclusive exponents.
struct PermGenerating {
    BiSeries exp_form;
    BiSeries product_form;
    std::optional<BiSeries> closed_form;
};

// exp(sum_{n>=1} p^n T(n) Z) and prod_{r>=1, s} (1 - p^r q^s)^(-a(rs)); closed form
// 1/(p(Z(p) - Z(q))) when with_closed_form.
PermGenerating perm_generating(const FracSeries &Z, int p_through, const Rational &q_through,
                               bool with_closed_form = false);
// Order to which Z must be known for perm_generating at these bounds.
std::int64_t perm_generating_required_order(int p_through, const Rational &q_through);

// prod_{r>=1, s in Z} (1 - p^r q^s)^(c(rs)) through p^p_through, q^q_through.
BiSeries denominator_product(const FracSeries &Z, int p_through, const Rational &q_through, int sign);
// p (Z(p) - Z(q)) for Z = q^-1 + ...
BiSeries denominator_difference(const FracSeries &Z, int p_grading = 1);

// (1/n) sum_{ad=n} sum_{0<=b<d} Z((g^a h^b, h^d), (a tau + b)/d)
FracSeries hecke_orbifold(const TraceFamily &family, const AbelianGroup::Element &g, const AbelianGroup::Element &h,
                          int n);

FracSeries perm_orbifold_twisted(const TraceFamily &family, const AbelianGroup::Element &g,
                                 const AbelianGroup::Element &h, int n);

struct PermGeneratingTwisted {
    BiSeries exp_form;                 // 1 + ... in p^(1/m)
    std::optional<BiSeries> product_form; // g = 1 only
    std::optional<BiSeries> closed_form;  // 1/(p^(1/m)(Z(p) - Z(q)))
};
PermGeneratingTwisted perm_generating_twisted(const TraceFamily &family, const AbelianGroup::Element &g,
                                              const AbelianGroup::Element &h, const Rational &p_through,
                                              const Rational &q_through);

// T_h re-expressed in q^(1/m): q^n -> q^(n/m). Requires a Fricke declaration.
FracSeries fricke_twisted_sector(const FracSeries &T_h, int m, bool fricke);

// Checks T(n)Z((g,h)) = (l_n/n) F_n(Y), Y = Z/u for the leading coefficient u
// and F_n the Faber polynomial of Y re-expressed in q^(1/m); for n = 2 also
// 2 T(2) Z((g,h)) = Y^2 - 2 a_Y(1/m).
std::vector<Check> gen_replication_check(const TraceFamily &family, const AbelianGroup::Element &g,
                                         const AbelianGroup::Element &h, int n, const std::string &id_prefix);

// Entry (gh, h) equals entry (g, h) at tau - 1, for every pair present.
std::vector<Check> trace_t_consistency(const TraceFamily &family, const std::string &id_prefix);
// Z((g,h), tau) = Z((h^-1, g), -1/tau) at tau = 6i/5.
std::vector<Check> trace_s_consistency(const TraceFamily &family, const std::string &id_prefix,
                                       double tolerance = 1e-6, std::int64_t truncation = 40);
// The family of images hecke_orbifold(family, (g,h), n) over all pairs.
TraceFamily hecke_orbifold_family(const TraceFamily &family, int n);

} // namespace qseries
