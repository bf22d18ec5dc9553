#include "qseries/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <thread>

#include "qseries/catalog.hpp"
#include "qseries/errors.hpp"
#include "qseries/faber.hpp"
#include "qseries/hecke.hpp"
#include "qseries/modforms.hpp"
#include "qseries/orbifold.hpp"

namespace qseries {

namespace {

using Checks = std::vector<Check>;

struct Task {
    std::string name;
    std::function<Checks()> run;
};

std::string num2(int n)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d", n);
    return buf;
}

std::int64_t floor_of(const Rational &r)
{
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return f.get_si();
}

// Evaluate a formal polynomial in x at a series.
FracSeries formal_eval(const FormalPoly &p, const FracSeries &x)
{
    FracSeries acc;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + FracSeries::constant(p[i]);
    return acc;
}

// Every point of prod_j {0..deg[j]}.
std::vector<std::vector<int>> grid_points(const std::vector<int> &deg)
{
    std::vector<std::vector<int>> out{{}};
    for (int d : deg) {
        std::vector<std::vector<int>> next;
        for (const auto &p : out) {
            for (int v = 0; v <= d; ++v) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        }
        out = std::move(next);
    }
    return out;
}

// Degree bound of a(j) (weight j+1) in a weight-n polynomial.
std::vector<int> weight_degrees(int n)
{
    std::vector<int> deg;
    for (int j = 1; j <= n - 1; ++j) deg.push_back(n / (j + 1));
    return deg;
}

std::string point_string(const std::vector<int> &a)
{
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

// --- faber ------------------------------------------------------------------

FormalPoly faber_closed_form(int n, const std::vector<int> &a)
{
    auto A = [&](int j) { return Cyclotomic(static_cast<long>(a[static_cast<std::size_t>(j - 1)])); };
    switch (n) {
    case 1: return {Cyclotomic(0), Cyclotomic(1)};
    case 2: return {A(1) * Cyclotomic(-2), Cyclotomic(0), Cyclotomic(1)};
    case 3: return {A(2) * Cyclotomic(-3), A(1) * Cyclotomic(-3), Cyclotomic(0), Cyclotomic(1)};
    default: throw std::logic_error("no closed form");
    }
}

Check faber_closed_form_check(int n)
{
    const auto deg = weight_degrees(n);
    const auto pts = grid_points(deg);
    for (const auto &a : pts) {
        std::vector<Cyclotomic> coeffs{Cyclotomic(1), Cyclotomic(0)};
        for (int v : a) coeffs.emplace_back(static_cast<long>(v));
        const FracSeries t = FracSeries::from_coefficients(1, -1, coeffs, n + 1);
        const FaberPoly P = faber(t, n);
        if (!formal_equal(P.coefficients, faber_closed_form(n, a))) {
            return bool_check("closed-form.P" + std::to_string(n), "", false, "", "differs at a = " + point_string(a));
        }
    }
    static const char *forms[] = {"", "P_1(x) = x", "P_2(x) = x^2 - 2a(1)", "P_3(x) = x^3 - 3a(1)x - 3a(2)"};
    return bool_check("closed-form.P" + std::to_string(n),
                      std::string("Faber polynomial identity ") + forms[n] + " for t = q^-1 + a(1)q + a(2)q^2 + ...",
                      true, "polynomial identity in a(1..n-1)",
                      "agrees on all " + std::to_string(pts.size()) +
                          " points of the grid a(j) in {0..floor(n/(j+1))}, which determines a polynomial of that "
                          "degree");
}

std::vector<Task> faber_tasks(const VerifyOptions &opt)
{
    std::vector<Task> t;
    for (int n = 1; n <= 3; ++n) t.push_back({"closed-form", [n] { return Checks{faber_closed_form_check(n)}; }});
    const std::int64_t order = opt.order.value_or(20);
    t.push_back({"J.normalization", [order] {
                     Checks out;
                     const FracSeries J = catalog_series("J", order);
                     const auto polys = faber_all(J, 10);
                     for (int n = 1; n <= 10; ++n) {
                         const FracSeries lhs = polys[n - 1].evaluate(J).truncated_at(Rational(1));
                         out.push_back(series_check("J.normalization.n" + num2(n),
                                                    "P_n(J) = q^-n + O(q) for the Faber polynomial of J, n = " +
                                                        std::to_string(n),
                                                    lhs, FracSeries::monomial(1, -n, 1, 1)));
                     }
                     const std::string p3 = polys[2].to_string();
                     out.push_back(bool_check("J.P3", "Faber polynomial P_3 of J is x^3 - 3c(1)x - 3c(2)",
                                              p3 == "x^3 - 590652*x - 64481280", "exact", p3));
                     return out;
                 }});
    const int p = opt.p_order.value_or(6);
    for (const std::string label : {"J", "2A"}) {
        t.push_back({"generating", [label, p] {
                         const FracSeries f = catalog_series(label, p + 2);
                         const auto r = faber_generating_check(f, p);
                         return Checks{bool_check(label + ".generating.p" + num2(p),
                                                  "exp(-sum_n p^n/n P_n(x)) = p(t(p) - x) with x formal, t = " + label,
                                                  r.equal, "p-exponents <= " + std::to_string(p), r.detail)};
                     }});
    }
    return t;
}

// --- hecke-algebra ------------------------------------------------------------

std::vector<Task> hecke_algebra_tasks(const VerifyOptions &opt)
{
    std::vector<Task> t;
    for (const std::string label : {"J", "E4", "E6"}) {
        t.push_back({label, [label] {
                         const FracSeries f = catalog_series(label, 600);
                         return verify_hecke_algebra_classical(f, label, 12, {2, 3}, 2);
                     }});
    }
    const std::int64_t q = opt.order.value_or(15);
    t.push_back({"J.replication", [q] {
                     Checks out;
                     const FracSeries J = catalog_series("J", 10 * (q + 1));
                     for (int n = 1; n <= 10; ++n) out.push_back(replication_check(J, n, "J"));
                     return out;
                 }});
    for (const std::string h : {"2A", "2B"}) {
        t.push_back({h + ".replication", [h, q] {
                         Checks out;
                         const TraceFamily fam = catalog_family("family:" + h, 4 * (q + 1));
                         for (int n = 1; n <= 4; ++n) {
                             for (Check &c : gen_replication_check(fam, {1}, {0}, n, h)) {
                                 c.description = "T(n)T_g = (1/n) F_n(T_g) with the twisted Hecke operator "
                                                 "T(n)T_g = (1/n) sum_{ad=n} sum_b T_{g^a}((a tau + b)/d), g = " +
                                                 h + ", n = " + std::to_string(n);
                                 if (c.id.find(".closing.") != std::string::npos) {
                                     c.description = "T_g(2tau) + J(tau/2) + J((tau+1)/2) = T_g^2 - 2a(1) for g = " + h;
                                 }
                                 out.push_back(std::move(c));
                             }
                         }
                         return out;
                     }});
    }
    return t;
}

// --- eisenstein ---------------------------------------------------------------

std::vector<Task> eisenstein_tasks(const VerifyOptions &opt)
{
    std::vector<Task> t;
    const std::int64_t order = opt.order.value_or(30);
    for (int k : {4, 6}) {
        t.push_back({"eigen", [k, order] {
                         Checks out;
                         const FracSeries big = eisenstein(k, 12 * order);
                         const FracSeries E = eisenstein(k, order);
                         for (int n = 1; n <= 12; ++n) {
                             const FracSeries lhs = n == 1 ? big : hecke_classical(k, n, big);
                             out.push_back(series_check("E" + std::to_string(k) + ".eigen.n" + num2(n),
                                                        "T(n)E_k = sigma_{k-1}(n) E_k for k = " + std::to_string(k) +
                                                            ", n = " + std::to_string(n),
                                                        lhs, E * Cyclotomic(sigma(k - 1, n))));
                         }
                         return out;
                     }});
    }
    t.push_back({"J.from-Delta", [order] {
                     const FracSeries E4 = eisenstein(4, order + 1);
                     const FracSeries D = catalog_series("Delta", order + 2);
                     const FracSeries rhs = E4 * E4 * E4 * ser_inv(D) - FracSeries::constant(744);
                     return Checks{series_check("J.from-Delta",
                                                "1728 E_4^3/(E_4^3 - E_6^2) - 744 = E_4^3/Delta - 744 with Delta = eta^24",
                                                catalog_series("J", order), rhs.with_weight(0))};
                 }});
    return t;
}

// --- sigma --------------------------------------------------------------------

bool coprime(std::int64_t a, std::int64_t b)
{
    return gcd64(a, b) == 1;
}

std::vector<std::pair<int, int>> prime_powers(int limit) // (p, m) with p^(m+1) <= limit
{
    std::vector<std::pair<int, int>> out;
    for (int p = 2; p <= limit; ++p) {
        bool prime = true;
        for (int d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
        if (!prime) continue;
        for (int m = 1, pm = p; static_cast<long>(pm) * p <= limit; ++m, pm *= p) out.emplace_back(p, m);
    }
    return out;
}

std::vector<Task> sigma_tasks(const VerifyOptions &)
{
    std::vector<Task> t;
    constexpr int kLimit = 100;
    t.push_back({"exact", [] {
                     Checks out;
                     for (int k = -3; k <= 6; ++k) {
                         int count = 0;
                         std::string bad;
                         for (int m = 1; m <= kLimit; ++m) {
                             for (int n = 1; m * n <= kLimit; ++n) {
                                 if (!coprime(m, n)) continue;
                                 ++count;
                                 if (sigma(k, m * n) != sigma(k, m) * sigma(k, n) && bad.empty()) {
                                     bad = "fails at m = " + std::to_string(m) + ", n = " + std::to_string(n);
                                 }
                             }
                         }
                         const std::string ks = (k < 0 ? "m" : "") + std::to_string(std::abs(k));
                         out.push_back(bool_check("multiplicative.k" + ks,
                                                  "sigma_k(mn) = sigma_k(m) sigma_k(n) for coprime m, n, mn <= 100, k = " +
                                                      std::to_string(k),
                                                  bad.empty(), "mn <= 100",
                                                  bad.empty() ? std::to_string(count) + " pairs, exact" : bad));
                         count = 0;
                         bad.clear();
                         for (const auto &[p, e] : prime_powers(kLimit)) {
                             ++count;
                             std::int64_t pe = 1;
                             for (int i = 0; i < e; ++i) pe *= p;
                             const Rational pk = k >= 0 ? Rational(static_cast<long>(std::pow(p, k)))
                                                        : Rational(Integer(1), Integer(static_cast<long>(std::pow(p, -k))));
                             const Rational lhs = sigma(k, p) * sigma(k, pe);
                             const Rational rhs = sigma(k, pe * p) + pk * sigma(k, pe / p);
                             if (lhs != rhs && bad.empty()) {
                                 bad = "fails at p = " + std::to_string(p) + ", m = " + std::to_string(e);
                             }
                         }
                         out.push_back(bool_check("prime-power.k" + ks,
                                                  "sigma_k(p) sigma_k(p^m) = sigma_k(p^(m+1)) + p^k sigma_k(p^(m-1)), "
                                                  "p^(m+1) <= 100, k = " +
                                                      std::to_string(k),
                                                  bad.empty(), "p^(m+1) <= 100",
                                                  bad.empty() ? std::to_string(count) + " instances, exact" : bad));
                     }
                     return out;
                 }});
    t.push_back({"numeric", [] {
                     Checks out;
                     const std::vector<std::pair<std::string, std::complex<double>>> ks{{"1.5", {1.5, 0.0}},
                                                                                        {"2+i", {2.0, 1.0}}};
                     for (const auto &[name, k] : ks) {
                         double err = 0;
                         for (int m = 1; m <= kLimit; ++m) {
                             for (int n = 1; m * n <= kLimit; ++n) {
                                 if (!coprime(m, n)) continue;
                                 const auto a = sigma_complex(k, m * n), b = sigma_complex(k, m) * sigma_complex(k, n);
                                 err = std::max(err, std::abs(a - b) / std::abs(a));
                             }
                         }
                         out.push_back(numeric_check("numeric.multiplicative.k" + name,
                                                     "sigma_k(mn) = sigma_k(m) sigma_k(n) for coprime m, n, mn <= 100, "
                                                     "complex k = " + name,
                                                     err, 1e-12, "mn <= 100", "max relative error"));
                         err = 0;
                         for (const auto &[p, e] : prime_powers(kLimit)) {
                             std::int64_t pe = 1;
                             for (int i = 0; i < e; ++i) pe *= p;
                             const auto lhs = sigma_complex(k, p) * sigma_complex(k, pe);
                             const auto rhs =
                                 sigma_complex(k, pe * p) + std::pow(std::complex<double>(p), k) * sigma_complex(k, pe / p);
                             err = std::max(err, std::abs(lhs - rhs) / std::abs(lhs));
                         }
                         out.push_back(numeric_check("numeric.prime-power.k" + name,
                                                     "sigma_k(p) sigma_k(p^m) = sigma_k(p^(m+1)) + p^k sigma_k(p^(m-1)), "
                                                     "p^(m+1) <= 100, complex k = " + name,
                                                     err, 1e-12, "p^(m+1) <= 100", "max relative error"));
                     }
                     return out;
                 }});
    return t;
}

// --- denominator --------------------------------------------------------------

std::vector<Task> denominator_tasks(const VerifyOptions &opt)
{
    std::vector<Task> t;
    const int p = opt.p_order.value_or(6);
    const std::int64_t q = opt.order.value_or(6);
    const Rational qb(q + 1);
    t.push_back({"J.product", [p, q, qb] {
                     const FracSeries J = catalog_series("J", perm_generating_required_order(p, Rational(q)));
                     const BiSeries lhs = denominator_product(J, p, Rational(q), 1);
                     const BiSeries rhs = denominator_difference(J).truncated(p + 1).q_truncated_at(qb);
                     return Checks{biseries_check("J.product",
                                                  "prod_{r>=1, s} (1 - p^r q^s)^c(rs) = p(J(p) - J(q))", lhs, rhs)};
                 }});
    t.push_back({"J.reciprocal", [p, q, qb] {
                     const int pr = p - 1;
                     const FracSeries J = catalog_series("J", perm_generating_required_order(p, Rational(q + 1)));
                     const BiSeries prod = denominator_product(J, pr, Rational(q + 1), -1);
                     const BiSeries lhs = bi_mul(prod, denominator_difference(J).truncated(pr + 1)).q_truncated_at(qb);
                     return Checks{biseries_check("J.reciprocal",
                                                  "prod_{r>=1, s} (1 - p^r q^s)^-c(rs) times p(J(p) - J(q)) = 1", lhs,
                                                  BiSeries::one(pr + 1))};
                 }});
    for (const std::string h : {"2A", "2B"}) {
        t.push_back({h + ".twisted", [h, p, q, qb] {
                         const std::int64_t order = perm_generating_required_order(p, Rational(q));
                         const TraceFamily fam = catalog_family("family:" + h, order);
                         BiSeries log_sum = BiSeries::zero(1, p + 1);
                         for (int n = 1; n <= p; ++n) {
                             log_sum -= BiSeries::monomial(n, hecke_orbifold(fam, {1}, {0}, n), 1, p + 1);
                         }
                         const BiSeries lhs = bi_exp(log_sum).q_truncated_at(qb);
                         const BiSeries rhs =
                             denominator_difference(fam.at({1}, {0})).truncated(p + 1).q_truncated_at(qb);
                         return Checks{biseries_check(
                             h + ".twisted", "exp(-sum_n p^n T(n)T_g) = p(T_g(p) - T_g(q)) with the twisted Hecke "
                                             "operator on (g,1) sectors, g = " + h,
                             lhs, rhs)};
                     }});
    }
    return t;
}

// --- perm-orbifold ------------------------------------------------------------

TraceFamily s2_family(const FracSeries &Z)
{
    TraceFamily fam("S2", AbelianGroup({2}));
    fam.set({0}, {0}, Z * Z);
    fam.set({1}, {0}, mobius_substitute(Z, 2, 0, 1));
    fam.set({0}, {1}, mobius_substitute(Z, 1, 0, 2));
    fam.set({1}, {1}, mobius_substitute(Z, 1, 1, 2));
    return fam;
}

// p^n coefficient of 1/(1 - p x + sum_k c(k) p^(k+1)) as a polynomial in x.
std::vector<FormalPoly> closed_form_rows(int n_max, const std::vector<Cyclotomic> &c) // c[k-1] = c(k)
{
    std::vector<FormalPoly> b{{Cyclotomic(1)}};
    for (int n = 1; n <= n_max; ++n) {
        FormalPoly row = formal_mul(b[n - 1], {Cyclotomic(0), Cyclotomic(1)});
        for (int k = 1; k <= n - 1; ++k) row = formal_add(row, formal_scale(b[n - 1 - k], -c[k - 1]));
        b.push_back(row);
    }
    return b;
}

// Displayed coefficients of p^2, p^3, p^4.
FormalPoly displayed_row(int n, const std::vector<Cyclotomic> &c)
{
    const Cyclotomic c1 = c[0], c2 = c.size() > 1 ? c[1] : 0, c3 = c.size() > 2 ? c[2] : 0;
    switch (n) {
    case 2: return {-c1, 0, 1};
    case 3: return {-c2, c1 * Cyclotomic(-2), 0, 1};
    case 4: return {c1 * c1 - c3, c2 * Cyclotomic(-2), c1 * Cyclotomic(-3), 0, 1};
    default: throw std::logic_error("no displayed row");
    }
}

const char *kDisplayed[] = {"", "", "J^2 - c(1)", "J^3 - 2c(1)J - c(2)", "J^4 - 3c(1)J^2 - 2c(2)J - c(3) + c(1)^2"};

std::vector<Task> perm_orbifold_tasks(const VerifyOptions &opt)
{
    std::vector<Task> t;
    const int p = opt.p_order.value_or(6);
    const std::int64_t q = opt.order.value_or(10);
    for (const std::string label : {"J", "Leech"}) {
        t.push_back({label + ".S2", [label, q] {
                         const FracSeries Z = catalog_series(label, 2 * (q + 2));
                         const FracSeries orb = g_orbifold_partition(s2_family(Z));
                         const FracSeries rhs = Z * Z * Cyclotomic(Rational(1, 2)) + hecke_classical(0, 2, Z);
                         return Checks{series_check(label + ".S2",
                                                    "(1/2) sum over commuting pairs of S_2 of Z((g,h)) = (1/2)Z^2 + "
                                                    "T(2)Z for Z = " + label,
                                                    orb, rhs)};
                     }});
    }
    t.push_back({"J.generating", [p, q] {
                     Checks out;
                     const std::int64_t order = perm_generating_required_order(p, Rational(q));
                     const FracSeries J = catalog_series("J", order);
                     const PermGenerating g = perm_generating(J, p, Rational(q), true);
                     out.push_back(biseries_check("J.exp-vs-product",
                                                  "exp(sum_n p^n T(n)J) = prod_{r>=1, s} (1 - p^r q^s)^-c(rs)",
                                                  g.exp_form, g.product_form));
                     out.push_back(biseries_check("J.exp-vs-closed", "exp(sum_n p^n T(n)J) = 1/(p(J(p) - J(q)))",
                                                  g.exp_form, *g.closed_form));
                     for (int n = 1; n <= p; ++n) {
                         out.push_back(series_check(
                             "J.partition-sum.n" + num2(n),
                             "sum over cycle types of prod_k (1/m_k!)(T(k)J)^m_k equals the p^n coefficient of "
                             "exp(sum_k p^k T(k)J), n = " + std::to_string(n),
                             perm_orbifold(J, n), g.exp_form.coefficient(n)));
                     }
                     std::vector<Cyclotomic> c;
                     for (int k = 1; k <= 3; ++k) c.push_back(J.coefficient(k));
                     for (int n = 2; n <= std::min(p, 4); ++n) {
                         out.push_back(series_check("J.displayed.p" + std::to_string(n),
                                                    std::string("p^n coefficient of exp(sum_k p^k T(k)J) equals ") +
                                                        kDisplayed[n],
                                                    g.exp_form.coefficient(n), formal_eval(displayed_row(n, c), J)));
                     }
                     return out;
                 }});
    t.push_back({"displayed.symbolic", [] {
                     Checks out;
                     for (int n = 2; n <= 4; ++n) {
                         const auto pts = grid_points(weight_degrees(n));
                         std::string bad;
                         for (const auto &a : pts) {
                             std::vector<Cyclotomic> c;
                             for (int v : a) c.emplace_back(static_cast<long>(v));
                             while (c.size() < 3) c.emplace_back(0);
                             if (!formal_equal(closed_form_rows(n, c)[n], displayed_row(n, c)) && bad.empty()) {
                                 bad = "differs at c = " + point_string(a);
                             }
                         }
                         out.push_back(bool_check("displayed.symbolic.p" + std::to_string(n),
                                                  std::string("p^n coefficient of 1/(p(t(p) - x)) is ") + kDisplayed[n] +
                                                      " with J replaced by a formal x, t = q^-1 + sum c(k) q^k",
                                                  bad.empty(), "polynomial identity in x, c(1..n-1)",
                                                  bad.empty() ? "agrees on all " + std::to_string(pts.size()) +
                                                                    " points of the grid c(k) in {0..floor(n/(k+1))}"
                                                              : bad));
                     }
                     return out;
                 }});
    t.push_back({"Leech.generating", [p, q] {
                     const FracSeries Z = catalog_series("Leech", perm_generating_required_order(p, Rational(q)));
                     const PermGenerating g = perm_generating(Z, p, Rational(q));
                     return Checks{biseries_check("Leech.exp-vs-product",
                                                  "exp(sum_n p^n T(n)Z) = prod_{r>=1, s} (1 - p^r q^s)^-a(rs) for Z = J + 24",
                                                  g.exp_form, g.product_form)};
                 }});
    return t;
}

// --- twisted-eisenstein -------------------------------------------------------

std::string kn_label(int k, int N)
{
    return "k" + std::to_string(k) + ".N" + std::to_string(N);
}

std::vector<Task> twisted_eisenstein_tasks(const VerifyOptions &opt)
{
    std::vector<Task> t;
    const std::int64_t order = opt.order.value_or(40);
    for (int k : {4, 5, 6}) {
        for (int N = 1; N <= 4; ++N) {
            t.push_back({"lattice", [k, N] {
                             Checks out;
                             const std::complex<double> tau(0.0, 2.0);
                             for (int i = 0; i < N; ++i) {
                                 for (int j = 0; j < N; ++j) {
                                     const FracSeries G = twisted_eisenstein(k, N, i, j, 40);
                                     const auto th = std::polar(1.0, 2 * M_PI * i / N);
                                     const auto ph = std::polar(1.0, 2 * M_PI * j / N);
                                     const auto exact = G.evaluate(tau);
                                     const auto lattice =
                                         twisted_normalization(k) * twisted_eisenstein_numeric(k, th, ph, tau, 600);
                                     out.push_back(numeric_check(
                                         kn_label(k, N) + ".lattice(" + std::to_string(i) + "," + std::to_string(j) + ")",
                                         "q-expansion of sum' theta^m phi^n/(m tau + n)^k agrees with the lattice sum "
                                         "over |m|,|n| <= 600 at tau = 2i, k = " + std::to_string(k) +
                                             ", (theta, phi) = (zeta_" + std::to_string(N) + "^" + std::to_string(i) +
                                             ", zeta_" + std::to_string(N) + "^" + std::to_string(j) +
                                             "), normalized by (k-1)!/(2 pi i)^k",
                                         std::abs(exact - lattice), 1e-6, "q-expansion through q^40",
                                         "absolute error"));
                                 }
                             }
                             return out;
                         }});
            t.push_back({"hecke", [k, N, order] {
                             Checks out;
                             const TwistedFamily fam = twisted_eisenstein_family(k, N, 3 * order);
                             for (int p : {2, 3}) {
                                 const TwistedFamily T = hecke_twisted(fam, p);
                                 const TwistedFamily R = homothety(fam, p);
                                 for (const auto &[idx, f] : fam.entries()) {
                                     const auto [i, j] = idx;
                                     const FracSeries rhs = f * Cyclotomic(Rational(static_cast<long>(std::pow(p, k - 1)))) +
                                                            R.at(i, j);
                                     out.push_back(series_check(
                                         kn_label(k, N) + ".Tp.p" + std::to_string(p) + "(" + std::to_string(i) + "," +
                                             std::to_string(j) + ")",
                                         "T(p)G_k((theta,phi)) = p^(k-1) G_k((theta,phi)) + R(p)G_k((theta,phi)) for p = " +
                                             std::to_string(p) + ", k = " + std::to_string(k) + ", (theta, phi) = (zeta_" +
                                             std::to_string(N) + "^" + std::to_string(i) + ", zeta_" + std::to_string(N) +
                                             "^" + std::to_string(j) + ")",
                                         T.at(i, j), rhs));
                                 }
                             }
                             for (Check &c : twisted_t_consistency(fam, kn_label(k, N))) out.push_back(std::move(c));
                             for (Check &c : twisted_s_consistency(fam, kn_label(k, N))) out.push_back(std::move(c));
                             return out;
                         }});
        }
    }
    return t;
}

// --- twisted-hecke ------------------------------------------------------------

std::vector<Task> twisted_hecke_tasks(const VerifyOptions &opt)
{
    std::vector<Task> t;
    const std::int64_t order = opt.order.value_or(20);
    for (int k : {4, 5, 6}) {
        for (int N = 2; N <= 4; ++N) {
            t.push_back({"algebra", [k, N, order] {
                             const TwistedFamily fam = twisted_eisenstein_family(k, N, 9 * order);
                             return verify_hecke_algebra_twisted(fam, kn_label(k, N), {2, 3}, 1, {{2, 3}});
                         }});
        }
    }
    return t;
}

// --- catalog ------------------------------------------------------------------

std::vector<Task> catalog_tasks(const VerifyOptions &opt)
{
    std::vector<Task> t;
    const std::int64_t order = opt.order.value_or(30);
    t.push_back({"values", [] {
                     Checks out;
                     const FracSeries J = catalog_series("J", 3);
                     const bool jok = J.coefficient(-1) == Cyclotomic(1) && J.coefficient(0).is_zero() &&
                                      J.coefficient(1) == Cyclotomic(196884) && J.coefficient(2) == Cyclotomic(21493760);
                     out.push_back(bool_check("J.coefficients", "J = q^-1 + 0 + 196884q + 21493760q^2 + ...", jok,
                                              "exponents < 3", J.to_string()));
                     const FracSeries L = catalog_series("Leech", 2);
                     out.push_back(bool_check("Leech.constant", "the Leech partition function J + 24 has constant term 24",
                                              L.coefficient(0) == Cyclotomic(24), "exponents < 2", L.to_string()));
                     const FracSeries A = catalog_series("2A", 3);
                     out.push_back(bool_check("2A.q1", "the McKay-Thompson series of 2A has q-coefficient 4372",
                                              A.coefficient(1) == Cyclotomic(4372), "exponents < 3", A.to_string()));
                     return out;
                 }});
    t.push_back({"normalization", [order] {
                     Checks out;
                     for (const std::string label : {"J", "2A", "2B"}) {
                         const FracSeries f = catalog_series(label, order);
                         const bool ok = f.valuation() == std::optional<std::int64_t>(-1) &&
                                         f.coefficient(-1) == Cyclotomic(1) && f.coefficient(0).is_zero() &&
                                         f.all_integral() && f.all_rational();
                         out.push_back(bool_check(label + ".normalized",
                                                  "T = q^-1 + 0 + ... with rational integer coefficients for " + label, ok,
                                                  "exponents < " + std::to_string(order), f.to_string(4)));
                     }
                     return out;
                 }});
    for (const std::string h : {"2A", "2B"}) {
        t.push_back({h + ".family", [h, order] {
                         Checks out;
                         const TraceFamily fam = catalog_family("family:" + h, order);
                         const FracSeries orb = g_orbifold_partition(fam);
                         const bool fricke = h == "2A";
                         const Cyclotomic want = fricke ? 0 : 24;
                         out.push_back(bool_check(
                             h + ".orbifold.constant",
                             std::string("the Z/2 orbifold by a ") + (fricke ? "Fricke" : "non-Fricke") +
                                 " involution has constant term " + (fricke ? "0" : "24") + " and leading term q^-1",
                             orb.coefficient(0) == want && orb.valuation() == std::optional<std::int64_t>(-1) &&
                                 orb.coefficient(-1) == Cyclotomic(1),
                             "exponents < 1", orb.to_string(4)));
                         out.push_back(series_check(h + ".orbifold.series",
                                                    std::string("(1/2) sum_{g,h in Z/2} Z((g,h)) equals ") +
                                                        (fricke ? "J" : "J + 24"),
                                                    orb, catalog_series(fricke ? "J" : "Leech", order)));
                         for (int j : {0, 1}) {
                             const FracSeries f = fam.at({0}, {j}).truncated_at(Rational(11));
                             bool ok = f.valuation().has_value();
                             std::string bad;
                             for (const auto &[n, c] : f.terms()) {
                                 if (!c.is_rational() || !c.is_integral() || sgn(c.to_rational()) < 0) {
                                     ok = false;
                                     if (bad.empty()) bad = "coefficient of " + exponent_string(n, f.grading()) + " is " + c.to_string();
                                 }
                             }
                             out.push_back(bool_check(h + ".nonnegative" + fam.pair_string({0}, {j}),
                                                      "twisted sector Z((1,h)) has nonnegative integer coefficients, (1,h) = " +
                                                          fam.pair_string({0}, {j}),
                                                      ok, "exponents <= 10", bad.empty() ? "all nonnegative integers" : bad));
                         }
                         for (Check &c : trace_t_consistency(fam, h)) out.push_back(std::move(c));
                         for (Check &c : trace_s_consistency(fam, h)) out.push_back(std::move(c));
                         for (int n : {2, 3}) {
                             const TraceFamily img = hecke_orbifold_family(fam, n);
                             for (Check &c : trace_t_consistency(img, h + ".T" + std::to_string(n))) {
                                 c.description = "twisted Hecke images T(" + std::to_string(n) + ")Z((g,h)): " + c.description;
                                 out.push_back(std::move(c));
                             }
                         }
                         if (fricke) {
                             out.push_back(series_check(h + ".fricke-sector",
                                                        "Z((1,h), q^2) = Z((h,1), q) for the Fricke involution h = 2A",
                                                        fricke_twisted_sector(catalog_series(h, order), 2, true)
                                                            .truncated_at(Rational(order)),
                                                        fam.at({0}, {1})));
                         } else {
                             bool rejected = false;
                             try {
                                 (void)fricke_twisted_sector(catalog_series(h, 4), 2, false);
                             } catch (const PreconditionError &) {
                                 rejected = true;
                             }
                             out.push_back(bool_check(h + ".fricke-sector.rejected",
                                                      "the twisted sector of a non-Fricke class is not a rescaled "
                                                      "McKay-Thompson series; the request is refused",
                                                      rejected, "precondition", rejected ? "refused" : "accepted"));
                         }
                         return out;
                     }});
    }
    return t;
}

// --- gen-moonshine ------------------------------------------------------------

std::vector<Task> gen_moonshine_tasks(const VerifyOptions &opt)
{
    std::vector<Task> t;
    const std::int64_t q = opt.order.value_or(10);
    for (int g : {0, 1}) {
        t.push_back({"replication", [g, q] {
                         Checks out;
                         const TraceFamily fam = catalog_family("family:2A", 4 * (q + 1) + 4);
                         const std::string prefix = std::string("2A.") + (g ? "g=h" : "g=1");
                         for (int n = 1; n <= 4; ++n) {
                             for (Check &c : gen_replication_check(fam, {g}, {1}, n, prefix)) {
                                 if (n == 2 && c.id.find(".closing.") != std::string::npos) {
                                     c.description = g ? "T_h(tau) + J(tau/2) + T_h((tau+1)/2) = Z^2 - 2a(1/2) for "
                                                         "Z = Z((h,h)) normalized, h = 2A"
                                                       : "Z((1,h),2tau) + J(tau/2) + T_h((tau+1)/2) = Z^2 - 2a(1/2) "
                                                         "for Z = Z((1,h)), h = 2A";
                                     c = series_check(c.id, c.description,
                                                      hecke_orbifold(fam, {g}, {1}, 2).truncated_at(Rational(q + 1)) *
                                                          Cyclotomic(2),
                                                      [&] {
                                                          const FracSeries Z = fam.at({g}, {1});
                                                          const Cyclotomic u = Z.coefficient(-1);
                                                          const FracSeries Y = Z * u.inverse();
                                                          return Y * Y - FracSeries::constant(Y.coefficient(1) * Cyclotomic(2));
                                                      }());
                                 }
                                 out.push_back(std::move(c));
                             }
                         }
                         return out;
                     }});
    }
    const Rational pt = opt.p_order ? Rational(*opt.p_order) : Rational(3, 2);
    const Rational qt(opt.order.value_or(8));
    for (const std::string h : {"2A", "2B"}) {
        t.push_back({h + ".generating", [h, pt, qt] {
                         Checks out;
                         const Rational need = pt * 2 * (qt + pt + 2) + 2;
                         const TraceFamily fam = catalog_family("family:" + h, floor_of(need) + 1);
                         const PermGeneratingTwisted g = perm_generating_twisted(fam, {0}, {1}, pt, qt);
                         const std::string pts = pt.get_str();
                         if (g.closed_form) {
                             out.push_back(biseries_check(h + ".exp-vs-closed",
                                                          "exp(sum_n p^(n/2) T(n)Z((1,h))) = 1/(p^(1/2)(Z((1,h),p) - "
                                                          "Z((1,h),q))) for the Fricke class h = " + h,
                                                          g.exp_form, *g.closed_form));
                         }
                         out.push_back(biseries_check(h + ".exp-vs-product",
                                                      "exp(sum_n p^(n/2) T(n)Z((1,h))) = prod_{r>=1, s} (1 - p^(r/2) "
                                                      "q^(s/2))^-a((1,h^r), rs/2) for h = " + h,
                                                      g.exp_form, *g.product_form));
                         const std::int64_t P = floor_of(pt * 2);
                         for (int n = 1; n <= P; ++n) {
                             out.push_back(series_check(
                                 h + ".partition-sum.n" + num2(n),
                                 "sum over cycle types of prod_k (1/m_k!)(T(k)Z((1,h)))^m_k equals the p^(n/2) "
                                 "coefficient of exp(sum_k p^(k/2) T(k)Z((1,h))), h = " + h + ", n = " + std::to_string(n),
                                 perm_orbifold_twisted(fam, {0}, {1}, n), g.exp_form.coefficient(n)));
                         }
                         return out;
                     }});
    }
    if (opt.catalog) {
        for (const auto &[label, family] : opt.catalog->families) {
            const TraceFamily *fam = &family;
            const std::string lab = label;
            t.push_back({"loaded." + lab, [fam, lab] {
                             Checks out;
                             for (Check &c : trace_t_consistency(*fam, "loaded." + lab)) out.push_back(std::move(c));
                             for (Check &c : trace_s_consistency(*fam, "loaded." + lab)) out.push_back(std::move(c));
                             const auto &G = fam->group();
                             for (const auto &[pair, f] : fam->entries()) {
                                 const auto &[g, h] = pair;
                                 if (G.is_identity(h) || fam->fricke(h) != std::optional<bool>(true)) continue;
                                 for (int n : {2, 3}) {
                                     const std::string id = "loaded." + lab + ".gen-replication" + fam->pair_string(g, h) +
                                                            ".n" + num2(n);
                                     try {
                                         for (Check &c : gen_replication_check(*fam, g, h, n, id)) out.push_back(std::move(c));
                                     } catch (const PreconditionError &e) {
                                         Check c;
                                         c.id = id;
                                         c.description = "generalized replication T(n)Z((g,h)) = (1/n)F_n(Z((g,h))) at " +
                                                         fam->pair_string(g, h);
                                         c.status = Status::Inconclusive;
                                         c.conclusive_range = "none";
                                         c.detail = e.what();
                                         out.push_back(std::move(c));
                                     }
                                 }
                             }
                             return out;
                         }});
        }
    }
    return t;
}

using SuiteBuilder = std::vector<Task> (*)(const VerifyOptions &);

const std::vector<std::pair<std::string, SuiteBuilder>> &suites()
{
    static const std::vector<std::pair<std::string, SuiteBuilder>> s{
        {"faber", faber_tasks},
        {"hecke-algebra", hecke_algebra_tasks},
        {"eisenstein", eisenstein_tasks},
        {"sigma", sigma_tasks},
        {"denominator", denominator_tasks},
        {"perm-orbifold", perm_orbifold_tasks},
        {"twisted-eisenstein", twisted_eisenstein_tasks},
        {"twisted-hecke", twisted_hecke_tasks},
        {"catalog", catalog_tasks},
        {"gen-moonshine", gen_moonshine_tasks},
    };
    return s;
}

Checks run_tasks(const std::vector<Task> &tasks, unsigned threads)
{
    std::vector<Checks> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                results[i] = tasks[i].run();
            } catch (const std::exception &e) {
                Check c;
                c.id = tasks[i].name + ".error";
                c.description = "computation of the check group " + tasks[i].name;
                c.status = Status::Fail;
                c.conclusive_range = "none";
                c.detail = e.what();
                results[i] = {c};
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto &th : pool) th.join();
    Checks out;
    for (auto &r : results) {
        for (auto &c : r) out.push_back(std::move(c));
    }
    return out;
}

std::vector<Task> prefixed(const std::string &suite, std::vector<Task> tasks)
{
    for (Task &t : tasks) {
        t.name = suite + "." + t.name;
        t.run = [suite, run = std::move(t.run)] {
            Checks cs = run();
            for (Check &c : cs) c.id = suite + "." + c.id;
            return cs;
        };
    }
    return tasks;
}

} // namespace

std::vector<std::string> suite_names()
{
    std::vector<std::string> out;
    for (const auto &[name, b] : suites()) out.push_back(name);
    return out;
}

bool is_suite(const std::string &name)
{
    if (name == "all") return true;
    for (const auto &[n, b] : suites()) {
        if (n == name) return true;
    }
    return false;
}

Report run_suite(const std::string &suite, const VerifyOptions &options)
{
    if (!is_suite(suite)) throw PreconditionError("unknown suite '" + suite + "'");
    std::vector<Task> tasks;
    for (const auto &[name, build] : suites()) {
        if (suite != "all" && suite != name) continue;
        for (Task &t : prefixed(name, build(options))) tasks.push_back(std::move(t));
    }
    return make_report(suite, run_tasks(tasks, options.threads));
}

} // namespace qseries
