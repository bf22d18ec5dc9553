#include "qseries/coeffring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qseries/errors.hpp"

namespace qseries {

std::int64_t gcd64(std::int64_t a, std::int64_t b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0) return 0;
    return (a / gcd64(a, b)) * b;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t b)
{
    std::int64_t r = a % b;
    if (r < 0) r += b;
    return r;
}

unsigned euler_phi(unsigned n)
{
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::vector<unsigned> divisors(unsigned n)
{
    std::vector<unsigned> small, large;
    for (unsigned d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

namespace {

int moebius(unsigned n)
{
    int result = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

} // namespace

namespace {

std::vector<std::int64_t> compute_cyclotomic(unsigned n)
{
    // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}: multiply the numerator factors,
    // then divide exactly by the denominator factors.
    std::vector<std::int64_t> poly{1};
    std::vector<unsigned> denominators;
    for (unsigned d : divisors(n)) {
        int mu = moebius(n / d);
        if (mu == 1) {
            std::vector<std::int64_t> next(poly.size() + d, 0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + d] += poly[i];
                next[i] -= poly[i];
            }
            poly = std::move(next);
        } else if (mu == -1) {
            denominators.push_back(d);
        }
    }
    for (unsigned d : denominators) {
        // poly = q * (x^d - 1)  =>  q_i = q_{i-d} - p_i
        std::vector<std::int64_t> q(poly.size() - d, 0);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = (i >= d ? q[i - d] : 0) - poly[i];
        poly = std::move(q);
    }
    return poly;
}

constexpr unsigned kCachedOrders = 512;

} // namespace

std::vector<std::int64_t> cyclotomic_polynomial(unsigned n)
{
    if (n == 0) throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
    // Built once, read-only afterwards.
    static const std::vector<std::vector<std::int64_t>> table = [] {
        std::vector<std::vector<std::int64_t>> t(kCachedOrders + 1);
        for (unsigned k = 1; k <= kCachedOrders; ++k) t[k] = compute_cyclotomic(k);
        return t;
    }();
    if (n <= kCachedOrders) return table[n];
    return compute_cyclotomic(n);
}

template <typename T>
static void reduce_mod_impl(std::vector<T> &poly, const std::vector<std::int64_t> &phi_n)
{
    const std::size_t deg = phi_n.size() - 1;
    for (std::size_t i = poly.size(); i-- > deg;) {
        if (sgn(poly[i]) == 0) continue;
        const T c = poly[i];
        const std::size_t shift = i - deg;
        for (std::size_t j = 0; j < deg; ++j) {
            if (phi_n[j] != 0) poly[shift + j] -= c * static_cast<long>(phi_n[j]);
        }
        poly[i] = 0;
    }
    poly.resize(deg);
}

void reduce_mod_cyclotomic(std::vector<Rational> &poly, const std::vector<std::int64_t> &phi_n)
{
    reduce_mod_impl(poly, phi_n);
}

void reduce_mod_cyclotomic(std::vector<Integer> &poly, const std::vector<std::int64_t> &phi_n)
{
    reduce_mod_impl(poly, phi_n);
}

Rational ratio(std::int64_t n, std::int64_t d)
{
    Rational r(static_cast<long>(n), static_cast<long>(d));
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------

Cyclotomic::Cyclotomic() : order_(1), coeffs_(1) {}

Cyclotomic::Cyclotomic(const Rational &value) : order_(1), coeffs_{value}
{
    coeffs_[0].canonicalize();
}

Cyclotomic::Cyclotomic(long value) : order_(1), coeffs_{Rational(value)} {}

Cyclotomic::Cyclotomic(unsigned order, std::vector<Rational> reduced)
    : order_(order), coeffs_(std::move(reduced))
{
    normalize();
}

void Cyclotomic::normalize()
{
    if (order_ == 1) return;
    for (std::size_t j = 1; j < coeffs_.size(); ++j) {
        if (sgn(coeffs_[j]) != 0) return;
    }
    Rational c = coeffs_.empty() ? Rational(0) : coeffs_[0];
    order_ = 1;
    coeffs_.assign(1, c);
}

Cyclotomic Cyclotomic::root_of_unity(unsigned order, std::int64_t exponent)
{
    if (order == 0) throw std::invalid_argument("root_of_unity: order must be positive");
    const std::int64_t e = mod_floor(exponent, order);
    std::vector<Rational> poly(static_cast<std::size_t>(e) + 1);
    poly[e] = 1;
    return from_powers(order, poly);
}

Cyclotomic Cyclotomic::from_reduced(unsigned order, std::vector<Rational> coords)
{
    if (order == 0 || coords.size() != euler_phi(order)) {
        throw std::invalid_argument("from_reduced: coordinate count must equal phi(order)");
    }
    return Cyclotomic(order, std::move(coords));
}

Cyclotomic Cyclotomic::from_powers(unsigned order, const std::vector<Rational> &coeffs)
{
    if (order == 0) throw std::invalid_argument("from_powers: order must be positive");
    if (order == 1) {
        Rational sum = 0;
        for (const auto &c : coeffs) sum += c;
        return Cyclotomic(sum);
    }
    std::vector<Rational> folded(std::min<std::size_t>(coeffs.size(), order));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (sgn(coeffs[j]) != 0) folded[j % order] += coeffs[j];
    }
    const auto phi = cyclotomic_polynomial(order);
    if (folded.size() < phi.size() - 1) folded.resize(phi.size() - 1);
    reduce_mod_cyclotomic(folded, phi);
    return Cyclotomic(order, std::move(folded));
}

bool Cyclotomic::is_zero() const
{
    return order_ == 1 && sgn(coeffs_[0]) == 0;
}

bool Cyclotomic::is_integral() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational &c) { return c.get_den() == 1; });
}

Rational Cyclotomic::to_rational() const
{
    if (order_ != 1) throw PreconditionError("cyclotomic element " + to_string() + " is not rational");
    return coeffs_[0];
}

std::vector<Rational> Cyclotomic::coordinates_in(unsigned target_order) const
{
    if (target_order == order_) return coeffs_;
    if (target_order % order_ != 0) {
        throw std::invalid_argument("coordinates_in: target order " + std::to_string(target_order) +
                                    " is not a multiple of " + std::to_string(order_));
    }
    const unsigned phi_target = euler_phi(target_order);
    if (order_ == 1) {
        std::vector<Rational> out(phi_target);
        out[0] = coeffs_[0];
        return out;
    }
    const unsigned step = target_order / order_;
    std::vector<Rational> poly(static_cast<std::size_t>(coeffs_.size() - 1) * step + 1);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) poly[j * step] = coeffs_[j];
    if (poly.size() < phi_target) poly.resize(phi_target);
    reduce_mod_cyclotomic(poly, cyclotomic_polynomial(target_order));
    return poly;
}

namespace {

// Solve sum_j x_j * columns[j] = target over Q; returns false if inconsistent.
bool solve_linear(std::vector<std::vector<Rational>> columns, std::vector<Rational> target,
                  std::vector<Rational> &solution)
{
    const std::size_t rows = target.size();
    const std::size_t cols = columns.size();
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m[r][c] = columns[c][r];
        m[r][cols] = target[r];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < rows; ++c) {
        std::size_t p = row;
        while (p < rows && sgn(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][c];
        for (std::size_t k = c; k <= cols; ++k) m[row][k] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || sgn(m[r][c]) == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = c; k <= cols; ++k) m[r][k] -= f * m[row][k];
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (std::size_t r = row; r < rows; ++r) {
        if (sgn(m[r][cols]) != 0) return false;
    }
    solution.assign(cols, Rational(0));
    for (std::size_t r = 0; r < pivot_col.size(); ++r) solution[pivot_col[r]] = m[r][cols];
    return true;
}

} // namespace

bool Cyclotomic::lies_in(unsigned sub_order) const
{
    if (sub_order % order_ == 0) return true;
    // Q(zeta_N) and Q(zeta_d) intersect in Q(zeta_gcd(N, d)), the field fixed
    // by every zeta -> zeta^a with a = 1 mod gcd.
    const unsigned g = static_cast<unsigned>(gcd64(order_, sub_order));
    for (unsigned a = 1 + g; a < order_; a += g) {
        if (gcd64(a, order_) != 1) continue;
        if (galois(a) != *this) return false;
    }
    return true;
}

Cyclotomic Cyclotomic::simplified() const
{
    if (order_ == 1) return *this;
    for (unsigned d : divisors(order_)) {
        if (d == order_) break;
        if (d == 1) continue; // rationals are already normalized to order 1
        if (!lies_in(d)) continue;
        const unsigned phi_d = euler_phi(d);
        std::vector<std::vector<Rational>> columns;
        for (unsigned j = 0; j < phi_d; ++j) columns.push_back(root_of_unity(d, j).coordinates_in(order_));
        std::vector<Rational> x;
        if (solve_linear(columns, coeffs_, x)) return Cyclotomic(d, std::move(x));
    }
    return *this;
}

Cyclotomic Cyclotomic::galois(std::int64_t a) const
{
    if (order_ == 1) return *this;
    if (gcd64(a, order_) != 1) throw std::invalid_argument("galois: exponent not coprime to order");
    std::vector<Rational> poly(order_);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (sgn(coeffs_[j]) != 0) poly[mod_floor(static_cast<std::int64_t>(j) * a, order_)] += coeffs_[j];
    }
    return from_powers(order_, poly);
}

namespace {

using Poly = std::vector<Rational>;

void trim(Poly &p)
{
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// p = q * d + r with deg r < deg d; d nonzero and trimmed.
void divmod(const Poly &p, const Poly &d, Poly &q, Poly &r)
{
    r = p;
    trim(r);
    q.assign(r.size() >= d.size() ? r.size() - d.size() + 1 : 0, Rational(0));
    const Rational lead_inv = 1 / d.back();
    while (r.size() >= d.size()) {
        const std::size_t shift = r.size() - d.size();
        Rational c = r.back() * lead_inv;
        q[shift] = c;
        for (std::size_t j = 0; j < d.size(); ++j) r[shift + j] -= c * d[j];
        trim(r);
    }
}

Poly poly_mul(const Poly &a, const Poly &b)
{
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

Poly poly_sub(const Poly &a, const Poly &b)
{
    Poly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

} // namespace

Cyclotomic Cyclotomic::inverse() const
{
    if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic element");
    if (order_ == 1) return Cyclotomic(Rational(1 / coeffs_[0]));
    const auto phi_int = cyclotomic_polynomial(order_);
    Poly r0(phi_int.begin(), phi_int.end());
    Poly r1 = coeffs_;
    trim(r1);
    Poly s0, s1{Rational(1)};
    while (r1.size() > 1) {
        Poly q, r;
        divmod(r0, r1, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant; Phi_n is irreducible so gcd is 1
    const Rational c_inv = 1 / r1[0];
    for (auto &c : s1) c *= c_inv;
    return from_powers(order_, s1);
}

Cyclotomic Cyclotomic::operator-() const
{
    Cyclotomic out = *this;
    for (auto &c : out.coeffs_) c = -c;
    return out;
}

Cyclotomic &Cyclotomic::operator+=(const Cyclotomic &other)
{
    if (other.order_ == 1) {
        coeffs_[0] += other.coeffs_[0];
        return *this;
    }
    if (order_ != other.order_) {
        const unsigned l = static_cast<unsigned>(lcm64(order_, other.order_));
        coeffs_ = coordinates_in(l);
        order_ = l;
        const std::vector<Rational> o = other.coordinates_in(l);
        for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o[j];
    } else {
        for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
    }
    normalize();
    return *this;
}

Cyclotomic &Cyclotomic::operator-=(const Cyclotomic &other)
{
    return *this += -other;
}

Cyclotomic &Cyclotomic::operator*=(const Cyclotomic &other)
{
    if (other.order_ == 1) {
        if (sgn(other.coeffs_[0]) == 0) return *this = Cyclotomic();
        for (auto &c : coeffs_) c *= other.coeffs_[0];
        return *this;
    }
    if (order_ == 1) {
        Rational s = coeffs_[0];
        *this = other;
        if (sgn(s) == 0) return *this = Cyclotomic();
        for (auto &c : coeffs_) c *= s;
        return *this;
    }
    const unsigned l = static_cast<unsigned>(lcm64(order_, other.order_));
    Poly prod = poly_mul(coordinates_in(l), other.coordinates_in(l));
    const unsigned phi_l = euler_phi(l);
    if (prod.size() < phi_l) prod.resize(phi_l);
    reduce_mod_cyclotomic(prod, cyclotomic_polynomial(l));
    *this = Cyclotomic(l, std::move(prod));
    return *this;
}

Cyclotomic &Cyclotomic::operator/=(const Cyclotomic &other)
{
    return *this *= other.inverse();
}

bool operator==(const Cyclotomic &a, const Cyclotomic &b)
{
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    if (a.order_ == 1 || b.order_ == 1) return false; // normalized: non-rational never equals rational
    const unsigned l = static_cast<unsigned>(lcm64(a.order_, b.order_));
    return a.coordinates_in(l) == b.coordinates_in(l);
}

std::complex<double> Cyclotomic::embed_complex(int /*precision*/) const
{
    long double re = 0, im = 0;
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (sgn(coeffs_[j]) == 0) continue;
        const long double c = coeffs_[j].get_d();
        const long double angle = two_pi * static_cast<long double>(j) / order_;
        re += c * std::cos(angle);
        im += c * std::sin(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::string Cyclotomic::to_string(unsigned basis_order) const
{
    const std::vector<Rational> coords = coordinates_in(basis_order);
    std::string out;
    for (std::size_t j = 0; j < coords.size(); ++j) {
        const Rational &c = coords[j];
        const int s = sgn(c);
        if (s == 0) continue;
        if (j == 0) {
            out += c.get_str();
            continue;
        }
        if (s < 0) out += '-';
        else if (!out.empty()) out += '+';
        Rational mag = abs(c);
        if (mag != 1) out += mag.get_str() + "*";
        out += "z^" + std::to_string(j);
    }
    return out.empty() ? "0" : out;
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }
    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, 0, pos + 1); }

    std::string digits()
    {
        const std::size_t start = pos;
        while (!done() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected digits");
        std::string d(text.substr(start, pos - start));
        if (d.size() > 1 && d[0] == '0') {
            pos = start;
            fail("leading zero in number");
        }
        return d;
    }
};

} // namespace

Cyclotomic Cyclotomic::parse(std::string_view text, unsigned basis_order)
{
    if (basis_order == 0) throw ParseError("cyclotomic order must be positive", 0, 0);
    if (text == "0") return Cyclotomic();
    const unsigned phi = euler_phi(basis_order);
    std::vector<Rational> coords(phi);
    Cursor cur{text};
    long last_power = -1;
    bool first = true;
    while (!cur.done()) {
        int sign = 1;
        if (cur.peek() == '-') {
            sign = -1;
            ++cur.pos;
        } else if (cur.peek() == '+') {
            if (first) cur.fail("leading '+' is not canonical");
            ++cur.pos;
        } else if (!first) {
            cur.fail("expected '+' or '-' between terms");
        }
        first = false;
        Rational coeff = 1;
        bool explicit_coeff = false;
        if (cur.peek() != 'z') {
            const std::size_t num_pos = cur.pos;
            std::string num = cur.digits();
            Integer n(num), d(1);
            if (cur.peek() == '/') {
                ++cur.pos;
                std::string den = cur.digits();
                d = Integer(den);
                if (d <= 1) cur.fail("denominator must exceed 1");
                Integer g;
                mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
                if (g != 1) {
                    cur.pos = num_pos;
                    cur.fail("non-reduced rational " + num + "/" + den);
                }
            }
            if (n == 0) {
                cur.pos = num_pos;
                cur.fail("explicit zero term");
            }
            coeff = Rational(n, d);
            explicit_coeff = true;
        }
        long power = 0;
        if (cur.peek() == '*' || cur.peek() == 'z') {
            if (cur.peek() == '*') {
                if (!explicit_coeff) cur.fail("unexpected '*'");
                ++cur.pos;
                if (coeff == 1) cur.fail("coefficient 1 must be omitted");
            }
            if (cur.peek() != 'z') cur.fail("expected 'z'");
            ++cur.pos;
            if (cur.peek() != '^') cur.fail("expected '^'");
            ++cur.pos;
            const std::size_t pow_pos = cur.pos;
            power = std::stol(cur.digits());
            if (power == 0) {
                cur.pos = pow_pos;
                cur.fail("z^0 is not canonical");
            }
            if (power >= static_cast<long>(phi)) {
                cur.pos = pow_pos;
                cur.fail("power " + std::to_string(power) + " not below phi(" + std::to_string(basis_order) + ")");
            }
        } else if (!explicit_coeff) {
            cur.fail("expected term");
        }
        if (power <= last_power) cur.fail("powers must be strictly increasing");
        last_power = power;
        coords[power] = sign * coeff;
    }
    if (first) cur.fail("empty expression");
    if (basis_order == 1) return Cyclotomic(coords[0]);
    return Cyclotomic(basis_order, std::move(coords));
}

Cyclotomic cyc_add(const Cyclotomic &a, const Cyclotomic &b) { return a + b; }
Cyclotomic cyc_mul(const Cyclotomic &a, const Cyclotomic &b) { return a * b; }
Cyclotomic cyc_inv(const Cyclotomic &a) { return a.inverse(); }
std::complex<double> cyc_embed_complex(const Cyclotomic &a, int precision) { return a.embed_complex(precision); }

} // namespace qseries
