#include "qseries/faber.hpp"

#include <sstream>

#include "qseries/errors.hpp"

namespace qseries {

FormalPoly formal_add(const FormalPoly &a, const FormalPoly &b)
{
    FormalPoly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

FormalPoly formal_mul(const FormalPoly &a, const FormalPoly &b)
{
    if (a.empty() || b.empty()) return {};
    FormalPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
        }
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

FormalPoly formal_scale(const FormalPoly &a, const Cyclotomic &c)
{
    FormalPoly out = a;
    for (auto &x : out) x *= c;
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

bool formal_equal(const FormalPoly &a, const FormalPoly &b)
{
    FormalPoly d = formal_add(a, formal_scale(b, Cyclotomic(-1)));
    return d.empty();
}

std::string formal_to_string(const FormalPoly &a, const std::string &var)
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = a.size(); i-- > 0;) {
        const Cyclotomic &c = a[i];
        if (c.is_zero()) continue;
        std::string cs = c.to_string();
        const bool compound = !c.is_rational();
        bool negative = false;
        if (!compound && cs[0] == '-') {
            negative = true;
            cs = cs.substr(1);
        }
        if (first) out << (negative ? "-" : "");
        else out << (negative ? " - " : " + ");
        first = false;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (compound) cs = "(" + cs + ")";
        if (mono.empty()) out << cs;
        else if (cs == "1") out << mono;
        else out << cs << "*" << mono;
    }
    return first ? "0" : out.str();
}

FracSeries FaberPoly::evaluate(const FracSeries &x) const
{
    if (coefficients.empty()) return FracSeries();
    FracSeries acc = FracSeries::constant(coefficients.back());
    for (std::size_t j = coefficients.size() - 1; j-- > 0;) {
        acc = acc * x + FracSeries::constant(coefficients[j]);
    }
    return acc;
}

std::string FaberPoly::to_string(const std::string &var) const
{
    return formal_to_string(coefficients, var);
}

namespace {

void check_normalized(const FracSeries &t, int n)
{
    if (n < 1) throw PreconditionError("Faber polynomial degree must be positive");
    if (t.grading() != 1) {
        throw PreconditionError("Faber polynomials need an integrally graded series (re-express in q^(1/m) first)");
    }
    if (t.valuation() != -1 || t.coefficient(-1) != Cyclotomic(1)) {
        throw PreconditionError("Faber polynomials need a series starting with q^-1");
    }
    if (t.high() <= 0) throw TruncationError("series is not known through its constant term");
    if (!t.coefficient(0).is_zero()) {
        throw PreconditionError("Faber polynomials need zero constant term (recenter the series first)");
    }
    if (t.high() < n) {
        throw TruncationError("Faber polynomial of degree " + std::to_string(n) + " needs the series known below q^" +
                              std::to_string(n));
    }
}

FaberPoly eliminate(const std::vector<FracSeries> &powers, int n)
{
    FaberPoly p;
    p.coefficients.assign(static_cast<std::size_t>(n) + 1, Cyclotomic());
    p.coefficients[static_cast<std::size_t>(n)] = 1;
    FracSeries s = powers[static_cast<std::size_t>(n)];
    for (int e = -n + 1; e <= 0; ++e) {
        const Cyclotomic c = s.coefficient(e);
        if (c.is_zero()) continue;
        s -= powers[static_cast<std::size_t>(-e)] * c;
        p.coefficients[static_cast<std::size_t>(-e)] -= c;
    }
    return p;
}

std::vector<FracSeries> powers_of(const FracSeries &t, int n_max)
{
    const FracSeries base = t.truncated(n_max);
    std::vector<FracSeries> powers{FracSeries::constant(Cyclotomic(1))};
    for (int j = 1; j <= n_max; ++j) powers.push_back(powers.back() * base);
    return powers;
}

} // namespace

FaberPoly faber(const FracSeries &t, int n)
{
    check_normalized(t, n);
    return eliminate(powers_of(t, n), n);
}

std::vector<FaberPoly> faber_all(const FracSeries &t, int n_max)
{
    check_normalized(t, n_max);
    const auto powers = powers_of(t, n_max);
    std::vector<FaberPoly> out;
    for (int n = 1; n <= n_max; ++n) out.push_back(eliminate(powers, n));
    return out;
}

FaberGeneratingResult faber_generating_check(const FracSeries &t, int n_max)
{
    FaberGeneratingResult r;
    r.n_max = n_max;
    const auto polys = faber_all(t, n_max);
    // Right side: 1 - x p + sum_{k>=1} a(k) p^(k+1).
    std::vector<FormalPoly> rhs(static_cast<std::size_t>(n_max) + 1);
    rhs[0] = {Cyclotomic(1)};
    if (n_max >= 1) rhs[1] = {Cyclotomic(), Cyclotomic(-1)};
    for (int k = 1; k + 1 <= n_max; ++k) {
        const Cyclotomic a = t.coefficient(k);
        if (!a.is_zero()) rhs[static_cast<std::size_t>(k) + 1] = {a};
    }
    // Left side via n E_n = sum_k k F_k E_{n-k} with k F_k = -P_k.
    std::vector<FormalPoly> e(static_cast<std::size_t>(n_max) + 1);
    e[0] = {Cyclotomic(1)};
    for (int n = 1; n <= n_max; ++n) {
        FormalPoly acc;
        for (int k = 1; k <= n; ++k) {
            acc = formal_add(acc, formal_mul(polys[static_cast<std::size_t>(k) - 1].coefficients,
                                             e[static_cast<std::size_t>(n - k)]));
        }
        e[static_cast<std::size_t>(n)] = formal_scale(acc, Cyclotomic(Rational(-1, n)));
    }
    for (int n = 0; n <= n_max; ++n) {
        if (!formal_equal(e[static_cast<std::size_t>(n)], rhs[static_cast<std::size_t>(n)])) {
            r.equal = false;
            r.mismatch_power = n;
            r.detail = "p^" + std::to_string(n) + ": " + formal_to_string(e[static_cast<std::size_t>(n)]) + " vs " +
                       formal_to_string(rhs[static_cast<std::size_t>(n)]);
            return r;
        }
    }
    r.detail = "polynomial coefficients agree through p^" + std::to_string(n_max);
    return r;
}

} // namespace qseries
