#include "qseries/series_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "qseries/errors.hpp"

namespace qseries {

namespace {

std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

struct Line {
    std::size_t number;
    std::string_view text;
};

std::vector<Line> split_lines(std::string_view text)
{
    std::vector<Line> out;
    std::size_t pos = 0, number = 1;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) throw ParseError("missing newline at end of file", number, text.size() - pos + 1);
        out.push_back({number, text.substr(pos, nl - pos)});
        pos = nl + 1;
        ++number;
    }
    return out;
}

class Reader {
public:
    explicit Reader(std::string_view text) : lines_(split_lines(text)) {}

    bool done() const { return next_ >= lines_.size(); }
    std::size_t line_number() const { return done() ? lines_.size() + 1 : lines_[next_].number; }

    bool peek_key(std::string_view key) const
    {
        if (done()) return false;
        const auto t = lines_[next_].text;
        return t.size() > key.size() && t.substr(0, key.size()) == key && t[key.size()] == ' ';
    }

    // Value following "<key> "; the column of the value is returned through col.
    std::string_view take(std::string_view key, std::size_t &col)
    {
        if (!peek_key(key)) {
            throw ParseError("expected '" + std::string(key) + "' line", line_number(), 1);
        }
        const auto t = lines_[next_++].text;
        col = key.size() + 2;
        const auto v = t.substr(key.size() + 1);
        if (v.empty() || v.front() == ' ' || v.back() == ' ') {
            throw ParseError("value must be separated by exactly one space and have no trailing blanks",
                             lines_[next_ - 1].number, col);
        }
        return v;
    }

    std::size_t last_line() const { return lines_[next_ - 1].number; }

private:
    std::vector<Line> lines_;
    std::size_t next_ = 0;
};

std::int64_t parse_int(std::string_view s, std::size_t line, std::size_t col, bool allow_negative = true)
{
    std::size_t i = 0;
    bool neg = false;
    if (allow_negative && !s.empty() && s[0] == '-') {
        neg = true;
        i = 1;
    }
    if (i >= s.size()) throw ParseError("expected an integer", line, col);
    for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') throw ParseError("expected an integer", line, col + k);
    }
    if (s.size() - i > 1 && s[i] == '0') throw ParseError("leading zero in integer", line, col + i);
    if (neg && s.size() == 2 && s[1] == '0') throw ParseError("negative zero", line, col);
    if (s.size() - i > 18) throw ParseError("integer out of range", line, col);
    const std::int64_t v = std::stoll(std::string(s.substr(i)));
    return neg ? -v : v;
}

bool parse_yes_no(std::string_view s, std::size_t line, std::size_t col)
{
    if (s == "yes") return true;
    if (s == "no") return false;
    throw ParseError("expected 'yes' or 'no'", line, col);
}

std::vector<std::string_view> split_spaces(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t sp = s.find(' ', pos);
        out.push_back(s.substr(pos, sp == std::string_view::npos ? std::string_view::npos : sp - pos));
        if (sp == std::string_view::npos) break;
        pos = sp + 1;
    }
    return out;
}

unsigned minimal_field(const FracSeries &f)
{
    return f.simplified_fields().field_order();
}

void validate(const SeriesFile &file)
{
    if (file.anomaly_free && !*file.anomaly_free) {
        throw InvariantError("anomaly-free", "families with a global phase anomaly are not supported");
    }
    if (!file.pair) return;
    const auto &G = *file.group;
    const auto &[g, h] = *file.pair;
    const FracSeries &f = file.series;
    if (f.weight() != 0) throw InvariantError("weight-zero", "trace functions must have weight 0");
    if (G.is_identity(g) && G.is_identity(h) && f.grading() != 1) {
        throw InvariantError("integer-grading", "entry (1,1) must be integrally graded");
    }
    for (const auto &[n, c] : f.terms()) {
        if (!c.is_integral()) {
            throw InvariantError("integrality", "coefficient of " + exponent_string(n, f.grading()) +
                                                    " is not an algebraic integer");
        }
        if (G.is_identity(g)) {
            if (!c.is_rational() || sgn(c.to_rational()) < 0) {
                throw InvariantError("twisted-sector-nonnegativity",
                                     "coefficient of " + exponent_string(n, f.grading()) + " in a (1,h) sector is " +
                                         c.to_string());
            }
        }
    }
}

} // namespace

std::string format_series(const SeriesFile &file)
{
    const FracSeries f = file.series.simplified_fields();
    const unsigned N = f.field_order();
    std::ostringstream out;
    out << "object " << file.object << '\n';
    if (file.group) out << "group " << file.group->to_string() << '\n';
    if (file.pair) {
        out << "pair " << file.group->element_string(file.pair->first) << ' '
            << file.group->element_string(file.pair->second) << '\n';
    }
    if (file.fricke) out << "fricke " << yes_no(*file.fricke) << '\n';
    if (file.anomaly_free) out << "anomaly-free " << yes_no(*file.anomaly_free) << '\n';
    out << "weight " << f.weight() << '\n';
    out << "grading " << f.grading() << '\n';
    out << "cyclotomic " << N << '\n';
    out << "truncation " << (f.is_exact() ? std::string("exact") : std::to_string(f.high())) << '\n';
    for (const auto &[n, c] : f.terms()) out << "coeff " << n << ' ' << c.to_string(N) << '\n';
    return out.str();
}

std::string format_series(const std::string &object, const FracSeries &series)
{
    SeriesFile file;
    file.object = object;
    file.series = series;
    return format_series(file);
}

SeriesFile parse_series(std::string_view text)
{
    Reader rd(text);
    SeriesFile file;
    std::size_t col = 0;
    file.object = std::string(rd.take("object", col));
    if (file.object.find(' ') != std::string::npos) throw ParseError("object label contains a space", rd.last_line(), col);

    if (rd.peek_key("group")) {
        const auto v = rd.take("group", col);
        std::vector<int> factors;
        std::size_t c = col;
        for (const auto part : split_spaces(v)) {
            const auto x = parse_int(part, rd.last_line(), c, false);
            if (x < 1 || x > 1000000) throw ParseError("invariant factor out of range", rd.last_line(), c);
            factors.push_back(static_cast<int>(x));
            c += part.size() + 1;
        }
        try {
            file.group = AbelianGroup(factors);
        } catch (const PreconditionError &e) {
            throw ParseError(e.what(), rd.last_line(), col);
        }
    }
    if (rd.peek_key("pair")) {
        const auto v = rd.take("pair", col);
        if (!file.group) throw ParseError("'pair' needs a preceding 'group' line", rd.last_line(), 1);
        const auto parts = split_spaces(v);
        if (parts.size() != 2) throw ParseError("'pair' takes two group elements", rd.last_line(), col);
        AbelianGroup::Element g, h;
        try {
            g = file.group->parse_element(std::string(parts[0]));
        } catch (const PreconditionError &e) {
            throw ParseError(e.what(), rd.last_line(), col);
        }
        try {
            h = file.group->parse_element(std::string(parts[1]));
        } catch (const PreconditionError &e) {
            throw ParseError(e.what(), rd.last_line(), col + parts[0].size() + 1);
        }
        file.pair = {{g, h}};
    } else if (file.group) {
        throw ParseError("'group' without 'pair'", rd.line_number(), 1);
    }
    if (rd.peek_key("fricke")) {
        const auto v = rd.take("fricke", col);
        file.fricke = parse_yes_no(v, rd.last_line(), col);
    }
    if (rd.peek_key("anomaly-free")) {
        const auto v = rd.take("anomaly-free", col);
        file.anomaly_free = parse_yes_no(v, rd.last_line(), col);
    }
    auto v = rd.take("weight", col);
    const std::int64_t weight = parse_int(v, rd.last_line(), col);
    if (weight < -1000 || weight > 1000) throw ParseError("weight out of range", rd.last_line(), col);
    v = rd.take("grading", col);
    const std::int64_t grading = parse_int(v, rd.last_line(), col, false);
    if (grading < 1 || grading > 1000000) throw ParseError("grading must be positive", rd.last_line(), col);
    v = rd.take("cyclotomic", col);
    const std::size_t field_line = rd.last_line(), field_col = col;
    const std::int64_t N = parse_int(v, rd.last_line(), col, false);
    if (N < 1 || N > 100000) throw ParseError("cyclotomic order out of range", rd.last_line(), col);
    std::optional<std::int64_t> high;
    if (rd.peek_key("truncation")) {
        v = rd.take("truncation", col);
        if (v != "exact") high = parse_int(v, rd.last_line(), col);
        else high = kExact;
    }

    std::vector<std::pair<std::int64_t, Cyclotomic>> terms;
    while (!rd.done()) {
        v = rd.take("coeff", col);
        const std::size_t line = rd.last_line();
        const std::size_t sp = v.find(' ');
        if (sp == std::string_view::npos) throw ParseError("'coeff' needs a numerator and a value", line, col);
        const std::int64_t n = parse_int(v.substr(0, sp), line, col);
        if (!terms.empty() && n <= terms.back().first) {
            throw ParseError("coefficients must be listed in strictly increasing order", line, col);
        }
        if (high && *high < kExact && n >= *high) {
            throw ParseError("coefficient beyond the truncation bound", line, col);
        }
        Cyclotomic c;
        try {
            c = Cyclotomic::parse(v.substr(sp + 1), static_cast<unsigned>(N));
        } catch (const ParseError &e) {
            throw ParseError(e.message(), line, col + sp + e.column());
        }
        if (c.is_zero()) throw ParseError("zero coefficients are not listed", line, col + sp + 1);
        terms.emplace_back(n, std::move(c));
    }
    if (!high) high = terms.empty() ? 0 : terms.back().first + 1;

    std::vector<Cyclotomic> coeffs;
    std::int64_t low = terms.empty() ? 0 : terms.front().first;
    for (const auto &[n, c] : terms) {
        coeffs.resize(static_cast<std::size_t>(n - low));
        coeffs.push_back(c);
    }
    file.series = FracSeries::from_coefficients(static_cast<int>(grading), low, std::move(coeffs), *high,
                                                static_cast<int>(weight));
    if (minimal_field(file.series) != static_cast<unsigned>(N)) {
        throw ParseError("cyclotomic " + std::to_string(N) + " is not the smallest field of the coefficients (" +
                             std::to_string(minimal_field(file.series)) + ")",
                         field_line, field_col);
    }
    validate(file);
    return file;
}

SeriesFile load_series(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
    try {
        return parse_series(ss.str());
    } catch (const ParseError &e) {
        throw ParseError(path.filename().string() + ": " + e.message(), e.line(), e.column());
    } catch (const InvariantError &e) {
        throw InvariantError(e.invariant(), path.filename().string() + ": " +
                                                std::string(e.what()).substr(e.invariant().size() + 2));
    }
}

void save_series(const std::filesystem::path &path, const SeriesFile &file)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << format_series(file);
    out.close();
    if (!out) throw IoError("cannot write '" + path.string() + "'");
}

LoadedCatalog load_catalog_dir(const std::filesystem::path &dir)
{
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) throw IoError("'" + dir.string() + "' is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto &entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".series") files.push_back(entry.path());
    }
    if (ec) throw IoError("cannot list '" + dir.string() + "'");
    std::sort(files.begin(), files.end());

    LoadedCatalog out;
    for (const auto &path : files) {
        SeriesFile f = load_series(path);
        if (!f.pair) {
            if (out.series.count(f.object) || out.families.count(f.object)) {
                throw InvariantError("unique-label", "object '" + f.object + "' defined twice");
            }
            out.series.emplace(f.object, std::move(f.series));
            continue;
        }
        if (out.series.count(f.object)) throw InvariantError("unique-label", "object '" + f.object + "' defined twice");
        auto it = out.families.find(f.object);
        if (it == out.families.end()) it = out.families.emplace(f.object, TraceFamily(f.object, *f.group)).first;
        TraceFamily &fam = it->second;
        if (fam.group().factors() != f.group->factors()) {
            throw InvariantError("family-group", "entries of '" + f.object + "' declare different groups");
        }
        const auto &[g, h] = *f.pair;
        if (fam.contains(g, h)) {
            throw InvariantError("unique-pair", "entry " + fam.pair_string(g, h) + " of '" + f.object + "' given twice");
        }
        if (f.fricke) {
            const auto prev = fam.fricke(h);
            if (prev && *prev != *f.fricke) {
                throw InvariantError("fricke", "conflicting Fricke declarations for h = " + f.group->element_string(h));
            }
            fam.set_fricke(h, *f.fricke);
        }
        fam.set(g, h, std::move(f.series));
    }
    for (const auto &[label, fam] : out.families) {
        const AbelianGroup &G = fam.group();
        for (const auto &[pair, f] : fam.entries()) {
            const auto &[g, h] = pair;
            const auto gh = G.mul(g, h);
            if (!fam.contains(gh, h)) continue;
            const SeriesComparison cmp = compare_series(fam.at(gh, h), mobius_substitute(f, 1, -1, 1));
            if (!cmp.equal) {
                throw InvariantError("T-consistency", "family '" + label + "': entry " + fam.pair_string(gh, h) +
                                                          " is not entry " + fam.pair_string(g, h) +
                                                          " at tau - 1; first mismatch at " +
                                                          exponent_string(*cmp.first_mismatch, cmp.grading));
            }
        }
    }
    return out;
}

void save_family_dir(const std::filesystem::path &dir, const TraceFamily &family)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "'");
    auto clean = [](std::string s) {
        std::replace(s.begin(), s.end(), ':', '_');
        std::replace(s.begin(), s.end(), ',', '_');
        return s;
    };
    const auto &G = family.group();
    for (const auto &[pair, f] : family.entries()) {
        SeriesFile file;
        file.object = family.label();
        file.group = G;
        file.pair = pair;
        file.fricke = family.fricke(pair.second);
        file.series = f;
        const std::string name = clean(family.label()) + "." + clean(G.element_string(pair.first)) + "." +
                                 clean(G.element_string(pair.second)) + ".series";
        save_series(dir / name, file);
    }
}

} // namespace qseries
