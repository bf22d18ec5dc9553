#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "qseries/catalog.hpp"
#include "qseries/errors.hpp"
#include "qseries/faber.hpp"
#include "qseries/hecke.hpp"
#include "qseries/orbifold.hpp"
#include "qseries/series_io.hpp"
#include "qseries/verify.hpp"

using namespace qseries;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kIo = 3 };

struct Args {
    std::string object;
    int n = 1;
    std::optional<std::int64_t> order;
    std::optional<int> p_order;
    std::string suite = "all";
    std::string report;
    std::string format = "text";
    std::string catalog;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

struct Context {
    const Args &args;
    LoadedCatalog loaded;

    // Exponents < order; loaded series are cut to their own truncation.
    FracSeries series(std::int64_t order) const
    {
        if (auto it = loaded.series.find(args.object); it != loaded.series.end()) {
            const FracSeries &f = it->second;
            if (ratio(f.high(), f.grading()) < Rational(order)) {
                throw TruncationError("'" + args.object + "' is known only below " +
                                      exponent_string(f.high(), f.grading()));
            }
            return f.truncated_at(Rational(order));
        }
        if (!catalog_has(args.object) || catalog_is_family(args.object)) {
            throw PreconditionError("unknown series object '" + args.object + "'");
        }
        return catalog_series(args.object, order);
    }
};

std::string series_json(const std::string &object, const FracSeries &f)
{
    nlohmann::ordered_json j;
    j["object"] = object;
    j["weight"] = f.weight();
    j["grading"] = f.grading();
    if (f.is_exact()) {
        j["truncation"] = "exact";
    } else {
        j["truncation"] = ratio(f.high(), f.grading()).get_str();
    }
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto &[n, c] : f.canonical().terms()) {
        coeffs.push_back({{"exponent", ratio(n, f.grading()).get_str()}, {"value", c.simplified().to_string()}});
    }
    j["coefficients"] = coeffs;
    return j.dump(2) + "\n";
}

void emit_series(const Args &a, const std::string &object, const FracSeries &f)
{
    std::cout << (a.format == "json" ? series_json(object, f) : format_series(object, f));
}

int cmd_expand(const Context &ctx)
{
    const std::int64_t order = ctx.args.order.value_or(10);
    if (catalog_is_family(ctx.args.object)) {
        const TraceFamily fam = catalog_family(ctx.args.object, order);
        for (const auto &[pair, f] : fam.entries()) {
            emit_series(ctx.args, ctx.args.object + ":" + fam.pair_string(pair.first, pair.second), f);
        }
        return kPass;
    }
    emit_series(ctx.args, ctx.args.object, ctx.series(order));
    return kPass;
}

int cmd_hecke(const Context &ctx)
{
    const Args &a = ctx.args;
    if (a.n < 1) throw PreconditionError("--n must be positive");
    const std::int64_t order = a.order.value_or(10);
    const FracSeries f = ctx.series(sat_mul(order, a.n));
    const FracSeries out = hecke_classical(f.weight(), a.n, f).truncated_at(Rational(order));
    emit_series(a, "hecke:" + std::to_string(a.n) + ":" + a.object, out);
    return kPass;
}

int cmd_faber(const Context &ctx)
{
    const Args &a = ctx.args;
    if (a.n < 1) throw PreconditionError("--n must be positive");
    const FaberPoly P = faber(ctx.series(a.n + 1), a.n);
    if (a.format == "json") {
        nlohmann::ordered_json j;
        j["object"] = a.object;
        j["n"] = a.n;
        j["polynomial"] = P.to_string();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << P.to_string() << "\n";
    }
    return kPass;
}

int cmd_permorb(const Context &ctx)
{
    const Args &a = ctx.args;
    if (a.n < 1) throw PreconditionError("--n must be positive");
    const std::int64_t order = a.order.value_or(10);
    // T(k) for k <= n needs the input to order n * (order + n).
    const FracSeries Z = ctx.series(sat_mul(a.n, sat_add(order, a.n)) + 1);
    const FracSeries out = perm_orbifold(Z, a.n).truncated_at(Rational(order));
    emit_series(a, "permorb:" + std::to_string(a.n) + ":" + a.object, out);
    return kPass;
}

int cmd_verify(const Context &ctx)
{
    const Args &a = ctx.args;
    if (!is_suite(a.suite)) throw PreconditionError("unknown suite '" + a.suite + "'");
    VerifyOptions opt;
    opt.order = a.order;
    opt.p_order = a.p_order;
    opt.threads = a.threads;
    if (!a.catalog.empty()) opt.catalog = &ctx.loaded;
    const Report r = run_suite(a.suite, opt);
    const std::string stamp = utc_timestamp();
    if (!a.report.empty()) {
        std::ofstream out(a.report, std::ios::binary);
        out << report_json(r, stamp);
        if (!out) throw IoError("cannot write report '" + a.report + "'");
    }
    std::cout << (a.format == "json" ? report_json(r, stamp) : report_text(r));
    return r.passed() ? kPass : kFail;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact q-series engine: Hecke operators, Faber polynomials, orbifold partition functions"};
    app.require_subcommand(1);
    Args args;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--order", args.order, "q-order: exponents below this bound");
        sub->add_option("--format", args.format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--catalog", args.catalog, "directory of .series files")->check(CLI::ExistingDirectory);
    };
    auto *expand = app.add_subcommand("expand", "q-expansion of a catalog object");
    auto *hecke = app.add_subcommand("hecke", "apply the Hecke operator T(n)");
    auto *faber_cmd = app.add_subcommand("faber", "Faber polynomial P_n of a normalized series");
    auto *permorb = app.add_subcommand("permorb", "S_n permutation orbifold partition function");
    auto *verify = app.add_subcommand("verify", "run a verification suite");
    for (auto *sub : {expand, hecke, faber_cmd, permorb}) {
        sub->add_option("--object", args.object, "object label")->required();
        add_common(sub);
    }
    for (auto *sub : {hecke, faber_cmd, permorb}) sub->add_option("--n", args.n, "index n")->required();
    add_common(verify);
    verify->add_option("--suite", args.suite, "suite name or 'all'");
    verify->add_option("--p-order", args.p_order, "p-order of two-variable checks");
    verify->add_option("--report", args.report, "write the JSON report here");
    verify->add_option("--threads", args.threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        Context ctx{args, {}};
        if (!args.catalog.empty()) ctx.loaded = load_catalog_dir(args.catalog);
        if (args.order && *args.order < 0 && !verify->parsed()) throw PreconditionError("--order must be >= 0");
        if (expand->parsed()) return cmd_expand(ctx);
        if (hecke->parsed()) return cmd_hecke(ctx);
        if (faber_cmd->parsed()) return cmd_faber(ctx);
        if (permorb->parsed()) return cmd_permorb(ctx);
        return cmd_verify(ctx);
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
