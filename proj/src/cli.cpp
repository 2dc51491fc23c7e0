#include "pathwaykit/cli.hpp"

#include "pathwaykit/designstats.hpp"
#include "pathwaykit/errors.hpp"
#include "pathwaykit/melconv.hpp"
#include "pathwaykit/pathway.hpp"
#include "pathwaykit/phyllotaxis.hpp"
#include "pathwaykit/specfun.hpp"
#include "pathwaykit/table.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

namespace pathwaykit::cli {

namespace {

enum class Kind { decimal, decimal_list, count, count_list, text, path, choice, flag };

struct FlagSpec {
    std::string name;
    Kind kind;
    bool required = false;
    std::string help;
    std::vector<std::string> choices = {};
};

struct SubcommandSpec {
    Subcommand id;
    std::string name;
    std::string help;
    std::vector<FlagSpec> flags;
};

const std::vector<SubcommandSpec>& subcommand_table() {
    static const std::vector<SubcommandSpec> table = {
        {Subcommand::ml, "ml", "Mittag-Leffler function E^gamma_{alpha,beta}(x)",
         {{"alpha", Kind::decimal, true, "alpha > 0"},
          {"beta", Kind::decimal, false, "beta > 0 (default 1)"},
          {"gamma", Kind::decimal, false, "Pochhammer parameter (default 1)"},
          {"uppers", Kind::decimal_list, false, "extra numerator Pochhammer parameters"},
          {"lowers", Kind::decimal_list, false, "extra denominator Pochhammer parameters"},
          {"x", Kind::decimal_list, true, "argument(s), comma separated"}}},
        {Subcommand::pathway, "pathway", "pathway density queries",
         {{"params", Kind::path, true, "JSON file with alpha, gamma, delta, a, eta"},
          {"op", Kind::choice, true, "operation", {"pdf", "cdf", "sample", "support", "normalizer"}},
          {"x", Kind::decimal_list, false, "evaluation point(s) for pdf/cdf"},
          {"n", Kind::count, false, "sample size for sample"}}},
        {Subcommand::ratecalc, "ratecalc", "reaction-rate integral over a (gamma, a, b) grid",
         {{"gamma", Kind::decimal_list, true, "gamma value(s)"},
          {"a", Kind::decimal_list, true, "a value(s)"},
          {"b", Kind::decimal_list, true, "b value(s)"},
          {"route", Kind::choice, false, "evaluation route (default quadrature)",
           {"quadrature", "mellin", "checked"}}}},
        {Subcommand::kratzel, "kratzel", "Kratzel integral int x^gamma exp(-a x^alpha - y x^-beta) dx",
         {{"gamma", Kind::decimal, true, "power of x"},
          {"a", Kind::decimal, true, "a > 0"},
          {"y", Kind::decimal, true, "y >= 0"},
          {"alpha", Kind::decimal, false, "alpha > 0 (default 1)"},
          {"beta", Kind::decimal, false, "beta (default 1)"}}},
        {Subcommand::melconv, "melconv", "products and ratios of independent positive variables",
         {{"num", Kind::text, true, "numerator factors, e.g. gamma:2@1,uniform01"},
          {"den", Kind::text, false, "denominator factors"},
          {"u", Kind::decimal_list, false, "density evaluation point(s)"},
          {"moment", Kind::decimal_list, false, "real s for E(u^(s-1))"},
          {"n", Kind::count, false, "number of draws"}}},
        {Subcommand::anova, "anova", "missing-value two-way layout by Neumann series",
         {{"counts", Kind::path, true, "CSV of cell counts (p rows, q columns)"},
          {"rhs", Kind::path, true, "CSV with one column holding G (p rows)"},
          {"tol", Kind::decimal, false, "series tolerance (default 1e-12)"}}},
        {Subcommand::corr, "corr", "sample correlation of two CSV columns",
         {{"data", Kind::path, true, "CSV file"},
          {"x-col", Kind::count, false, "1-based column of x (default 1)"},
          {"y-col", Kind::count, false, "1-based column of y (default 2)"}}},
        {Subcommand::qform, "qform", "chi-square law check of X^T A X",
         {{"matrix", Kind::path, true, "CSV of the square matrix A"},
          {"n", Kind::count, false, "Monte Carlo draws (default 100000)"}}},
        {Subcommand::volume, "volume", "products of independent type-1 beta variables",
         {{"mode", Kind::choice, true, "trend or density", {"trend", "density"}},
          {"k", Kind::count_list, true, "number(s) of factors"},
          {"alpha", Kind::decimal, true, "beta shape alpha"},
          {"beta", Kind::decimal, true, "beta shape beta"},
          {"n", Kind::count, false, "draws per k for trend (default 100000)"},
          {"u", Kind::decimal_list, false, "density evaluation point(s)"}}},
        {Subcommand::phyllo, "phyllo", "spiral phyllotaxis point pattern as SVG",
         {{"n", Kind::count, true, "number of points"},
          {"k", Kind::decimal, false, "radius per radian (default 1)"},
          {"divergence", Kind::decimal, false, "divergence angle in degrees (default golden)"},
          {"marker-radius", Kind::decimal, false, "circle radius (default 1)"},
          {"pairs", Kind::flag, false, "print the parastichy pair instead of SVG"},
          {"window-begin", Kind::count, false, "first index of the pair window (default 0)"},
          {"window-end", Kind::count, false, "end index of the pair window (default n)"}}},
    };
    return table;
}

const SubcommandSpec* find_subcommand(const std::string& name) {
    for (const auto& s : subcommand_table()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

const SubcommandSpec& spec_of(Subcommand id) {
    for (const auto& s : subcommand_table()) {
        if (s.id == id) return s;
    }
    throw std::logic_error("unregistered subcommand");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = text.find(sep, start);
        out.push_back(text.substr(start, at == std::string::npos ? at : at - start));
        if (at == std::string::npos) break;
        start = at + 1;
    }
    return out;
}

double parse_decimal(const std::string& text, const std::string& flag) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw UsageError("--" + flag + ": malformed number '" + text + "'");
    }
    return v;
}

std::uint64_t parse_count(const std::string& text, const std::string& flag) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError("--" + flag + ": expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

std::vector<double> parse_decimal_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_decimal(item, flag));
    return out;
}

std::vector<std::uint64_t> parse_count_list(const std::string& text, const std::string& flag) {
    std::vector<std::uint64_t> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_count(item, flag));
    return out;
}

// kind[:p1[:p2...]][@exponent]
struct FactorText {
    std::string kind;
    std::vector<double> params;
    double exponent = 1.0;
};

std::vector<FactorText> parse_factors(const std::string& text, const std::string& flag) {
    static const std::map<std::string, std::size_t> arity = {
        {"gamma", 1}, {"gen_gamma", 3}, {"type1_beta", 2}, {"type2_beta", 2}, {"uniform01", 0}};
    std::vector<FactorText> out;
    for (const auto& item : split(text, ',')) {
        FactorText f;
        std::string body = item;
        if (const auto at = item.find('@'); at != std::string::npos) {
            f.exponent = parse_decimal(item.substr(at + 1), flag);
            body = item.substr(0, at);
        }
        auto parts = split(body, ':');
        f.kind = parts.front();
        const auto known = arity.find(f.kind);
        if (known == arity.end()) {
            throw UsageError("--" + flag + ": unknown density '" + f.kind +
                             "' (gamma, gen_gamma, type1_beta, type2_beta, uniform01)");
        }
        for (std::size_t i = 1; i < parts.size(); ++i) f.params.push_back(parse_decimal(parts[i], flag));
        if (f.params.size() != known->second) {
            throw UsageError("--" + flag + ": '" + f.kind + "' takes " + std::to_string(known->second) +
                             " parameter(s), got " + std::to_string(f.params.size()));
        }
        out.push_back(std::move(f));
    }
    return out;
}

void validate_value(const FlagSpec& flag, const std::string& value) {
    switch (flag.kind) {
        case Kind::decimal:
            parse_decimal(value, flag.name);
            break;
        case Kind::decimal_list:
            parse_decimal_list(value, flag.name);
            break;
        case Kind::count:
            parse_count(value, flag.name);
            break;
        case Kind::count_list:
            parse_count_list(value, flag.name);
            break;
        case Kind::text:
            if (flag.name == "num" || flag.name == "den") parse_factors(value, flag.name);
            break;
        case Kind::path:
            if (value.empty()) throw UsageError("--" + flag.name + ": empty path");
            break;
        case Kind::choice:
        case Kind::flag:
            break;
    }
}

// Requirements that depend on other flag values.
void validate_combinations(const RunConfig& c) {
    auto has = [&](const char* key) { return c.params.count(key) > 0; };
    switch (c.subcommand) {
        case Subcommand::pathway: {
            const std::string& op = c.params.at("op");
            if ((op == "pdf" || op == "cdf") && !has("x")) throw UsageError("--op " + op + " requires --x");
            if (op == "sample" && !has("n")) throw UsageError("--op sample requires --n");
            break;
        }
        case Subcommand::melconv: {
            const int modes = int(has("u")) + int(has("moment")) + int(has("n"));
            if (modes != 1) throw UsageError("--num: give exactly one of --u, --moment, --n");
            break;
        }
        case Subcommand::volume:
            if (c.params.at("mode") == "density") {
                if (!has("u")) throw UsageError("--mode density requires --u");
                if (split(c.params.at("k"), ',').size() != 1) {
                    throw UsageError("--k: --mode density takes a single k");
                }
            }
            break;
        default:
            break;
    }
}

// ---- run helpers ----

double decimal_or(const RunConfig& c, const std::string& key, double fallback) {
    const auto it = c.params.find(key);
    return it == c.params.end() ? fallback : parse_decimal(it->second, key);
}

std::uint64_t count_or(const RunConfig& c, const std::string& key, std::uint64_t fallback) {
    const auto it = c.params.find(key);
    return it == c.params.end() ? fallback : parse_count(it->second, key);
}

std::vector<double> decimals(const RunConfig& c, const std::string& key) {
    const auto it = c.params.find(key);
    return it == c.params.end() ? std::vector<double>{} : parse_decimal_list(it->second, key);
}

std::string scalar_line(double v) { return table::format_number(v) + "\n"; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Eigen::MatrixXd to_matrix(const table::Table& t) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(t.columns()));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < t.columns(); ++j) m(Eigen::Index(i), Eigen::Index(j)) = t.rows[i][j];
    }
    return m;
}

// One scalar for a single input, otherwise a two-or-more column table.
std::string scalar_or_table(const std::string& input_name, const std::vector<double>& inputs,
                            const std::string& value_name, const std::function<double(double)>& f) {
    if (inputs.size() == 1) return scalar_line(f(inputs.front()));
    table::Table t{{input_name, value_name}, {}};
    for (double x : inputs) t.rows.push_back({x, f(x)});
    return table::format_table(t);
}

melconv::ProductSpec build_product(const RunConfig& c) {
    melconv::ProductSpec spec;
    for (const auto& f : parse_factors(c.params.at("num"), "num")) {
        spec.numerator.push_back({melconv::builtin_density(f.kind, f.params), f.exponent});
    }
    if (const auto it = c.params.find("den"); it != c.params.end()) {
        for (const auto& f : parse_factors(it->second, "den")) {
            spec.denominator.push_back({melconv::builtin_density(f.kind, f.params), f.exponent});
        }
    }
    spec.validate();
    return spec;
}

std::string run_ml(const RunConfig& c) {
    const specfun::MLParams params(parse_decimal(c.params.at("alpha"), "alpha"), decimal_or(c, "beta", 1.0),
                                   decimal_or(c, "gamma", 1.0), decimals(c, "uppers"),
                                   decimals(c, "lowers"));
    return scalar_or_table("x", decimals(c, "x"), "value",
                           [&](double x) { return specfun::mittag_leffler(x, params); });
}

std::string run_pathway(const RunConfig& c) {
    const auto params = pathway::params_from_json(read_text_file(c.params.at("params")));
    const std::string& op = c.params.at("op");
    if (op == "pdf") {
        return scalar_or_table("x", decimals(c, "x"), "pdf",
                               [&](double x) { return pathway::pathway_pdf(params, x); });
    }
    if (op == "cdf") {
        return scalar_or_table("x", decimals(c, "x"), "cdf",
                               [&](double x) { return pathway::pathway_cdf(params, x); });
    }
    if (op == "sample") {
        table::Table t{{"x"}, {}};
        for (double x : pathway::pathway_sample(params, count_or(c, "n", 0), resolve_seed(c))) {
            t.rows.push_back({x});
        }
        return table::format_table(t);
    }
    if (op == "support") {
        const auto s = pathway::pathway_support(params);
        return table::format_table({{"lower", "upper"}, {{s.lower, s.upper}}});
    }
    return scalar_line(params.normalizer());
}

std::string run_ratecalc(const RunConfig& c) {
    const auto gammas = decimals(c, "gamma");
    const auto as = decimals(c, "a");
    const auto bs = decimals(c, "b");
    melconv::Route route = melconv::Route::quadrature;
    if (const auto it = c.params.find("route"); it != c.params.end()) {
        if (it->second == "mellin") route = melconv::Route::mellin;
        if (it->second == "checked") route = melconv::Route::checked;
    }
    if (gammas.size() == 1 && as.size() == 1 && bs.size() == 1) {
        return scalar_line(melconv::reaction_rate(gammas[0], as[0], bs[0], route));
    }
    table::Table t{{"gamma", "a", "b", "value", "abs_err_estimate"}, {}};
    for (double g : gammas) {
        for (double a : as) {
            for (double b : bs) {
                const auto r = melconv::reaction_rate_result(g, a, b, route);
                t.rows.push_back({g, a, b, r.value, r.abs_err});
            }
        }
    }
    return table::format_table(t);
}

std::string run_kratzel(const RunConfig& c) {
    const double gamma = parse_decimal(c.params.at("gamma"), "gamma");
    const double a = parse_decimal(c.params.at("a"), "a");
    const double y = parse_decimal(c.params.at("y"), "y");
    const double alpha = decimal_or(c, "alpha", 1.0);
    const double beta = decimal_or(c, "beta", 1.0);
    if (alpha == 1.0 && beta == 1.0) return scalar_line(melconv::kratzel_g1(gamma, a, y));
    return scalar_line(melconv::kratzel_g2(gamma, a, y, alpha, beta));
}

std::string run_melconv(const RunConfig& c) {
    const auto spec = build_product(c);
    if (c.params.count("u")) {
        const auto density = melconv::to_moment_density(spec);
        const auto us = decimals(c, "u");
        if (us.size() == 1) return scalar_line(melconv::mellin_invert(density, us[0]).value);
        table::Table t{{"u", "density", "abs_err_estimate"}, {}};
        for (double u : us) {
            const auto r = melconv::mellin_invert(density, u);
            t.rows.push_back({u, r.value, r.abs_err});
        }
        return table::format_table(t);
    }
    if (c.params.count("moment")) {
        return scalar_or_table("s", decimals(c, "moment"), "moment",
                               [&](double s) { return melconv::structure_moment(spec, s); });
    }
    table::Table t{{"x"}, {}};
    for (double x : melconv::sample_structure(spec, count_or(c, "n", 0), resolve_seed(c))) {
        t.rows.push_back({x});
    }
    return table::format_table(t);
}

std::string run_anova(const RunConfig& c) {
    const Eigen::MatrixXd counts = to_matrix(table::load_table(c.params.at("counts")));
    const table::Table rhs = table::load_table(c.params.at("rhs"));
    if (rhs.columns() != 1 || rhs.rows.size() != static_cast<std::size_t>(counts.rows())) {
        std::ostringstream os;
        os << "anova: --rhs must hold one column with " << counts.rows() << " rows";
        throw DomainError(os.str());
    }
    const Eigen::VectorXd G = to_matrix(rhs).col(0);
    const auto sys = design::build_incidence(counts).with_rhs(G);
    const auto result = design::neumann_solve(sys, decimal_or(c, "tol", 1e-12));
    table::Table t{{"index", "alpha_value"}, {}};
    for (Eigen::Index i = 0; i < result.alpha.size(); ++i) {
        t.rows.push_back({static_cast<double>(i + 1), result.alpha(i)});
    }
    return table::format_table(t);
}

std::string run_corr(const RunConfig& c) {
    const table::Table data = table::load_table(c.params.at("data"));
    const std::uint64_t xc = count_or(c, "x-col", 1);
    const std::uint64_t yc = count_or(c, "y-col", 2);
    for (std::uint64_t col : {xc, yc}) {
        if (col < 1 || col > data.columns()) {
            std::ostringstream os;
            os << "corr: column " << col << " out of range 1.." << data.columns();
            throw DomainError(os.str());
        }
    }
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& row : data.rows) {
        x.push_back(row[xc - 1]);
        y.push_back(row[yc - 1]);
    }
    return scalar_line(design::sample_correlation(x, y));
}

std::string run_qform(const RunConfig& c) {
    const Eigen::MatrixXd A = to_matrix(table::load_table(c.params.at("matrix")));
    const auto report = design::chisquared_form_check(A, count_or(c, "n", 100000), resolve_seed(c));
    table::Table t{{"rank", "idempotent", "ks_stat", "critical", "consistent"}, {}};
    t.rows.push_back({double(report.rank), report.idempotent ? 1.0 : 0.0, report.ks_stat,
                      report.critical, report.consistent ? 1.0 : 0.0});
    return table::format_table(t);
}

std::string run_volume(const RunConfig& c) {
    const melconv::BetaShape shape{parse_decimal(c.params.at("alpha"), "alpha"),
                                   parse_decimal(c.params.at("beta"), "beta")};
    const auto ks = parse_count_list(c.params.at("k"), "k");
    if (c.params.at("mode") == "trend") {
        const std::vector<std::size_t> k_list(ks.begin(), ks.end());
        table::Table t{{"k", "skewness"}, {}};
        for (const auto& p : melconv::normality_trend(k_list, shape, count_or(c, "n", 100000), resolve_seed(c))) {
            t.rows.push_back({double(p.k), p.skewness});
        }
        return table::format_table(t);
    }
    const std::array<melconv::BetaShape, 1> shapes{shape};
    const auto density = melconv::random_volume_dist(ks.front(), shapes);
    return scalar_or_table("u", decimals(c, "u"), "density",
                           [&](double u) { return melconv::mellin_invert(density, u).value; });
}

std::string run_phyllo(const RunConfig& c) {
    phyllo::SpiralConfig config;
    config.n_points = count_or(c, "n", 0);
    config.k = decimal_or(c, "k", 1.0);
    if (c.params.count("divergence")) {
        config.divergence = parse_decimal(c.params.at("divergence"), "divergence") * std::numbers::pi / 180.0;
    }
    config.marker_radius = decimal_or(c, "marker-radius", 1.0);
    config.validate();
    const auto points = phyllo::generate_points(config);
    if (!c.params.count("pairs")) return phyllo::render_svg(points, config);
    const phyllo::IndexWindow window{count_or(c, "window-begin", 0), count_or(c, "window-end", points.size())};
    if (window.begin >= window.end || window.end > points.size()) {
        throw DomainError("phyllo: window must satisfy begin < end <= n");
    }
    const auto [left, right] = phyllo::parastichy_pair(points, window);
    return table::format_table({{"left", "right"}, {{double(left), double(right)}}});
}

std::string dispatch(const RunConfig& c) {
    switch (c.subcommand) {
        case Subcommand::ml: return run_ml(c);
        case Subcommand::pathway: return run_pathway(c);
        case Subcommand::ratecalc: return run_ratecalc(c);
        case Subcommand::kratzel: return run_kratzel(c);
        case Subcommand::melconv: return run_melconv(c);
        case Subcommand::anova: return run_anova(c);
        case Subcommand::corr: return run_corr(c);
        case Subcommand::qform: return run_qform(c);
        case Subcommand::volume: return run_volume(c);
        case Subcommand::phyllo: return run_phyllo(c);
    }
    throw std::logic_error("unhandled subcommand");
}

}  // namespace

std::uint64_t resolve_seed(const RunConfig& config) {
    if (config.seed) return *config.seed;
    if (const char* env = std::getenv("PATHWAY_TOOLKIT_SEED"); env != nullptr && *env != '\0') {
        std::uint64_t v = 0;
        const std::string text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw UsageError("PATHWAY_TOOLKIT_SEED: expected a non-negative integer, got '" + text + "'");
        }
        return v;
    }
    return kDefaultSeed;
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
    if (args.empty()) throw UsageError("missing subcommand");
    const bool help_only = args.front() == "--help" || args.front() == "-h";
    if (!help_only && find_subcommand(args.front()) == nullptr) {
        throw UsageError("unknown subcommand '" + args.front() + "'");
    }

    CLI::App app{"Pathway model, Mellin convolution and related numerics", "pathwaykit"};
    app.require_subcommand(1);
    // Raw values per subcommand and flag; map nodes stay put while CLI11 writes to them.
    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::string> common_seed;
    std::map<std::string, std::string> common_output;
    for (const auto& sub : subcommand_table()) {
        CLI::App* s = app.add_subcommand(sub.name, sub.help);
        auto& store = values[sub.name];
        for (const auto& flag : sub.flags) {
            const std::string name = "--" + flag.name;
            if (flag.kind == Kind::flag) {
                s->add_flag(name, flag.help);
                continue;
            }
            CLI::Option* opt = s->add_option(name, store[flag.name], flag.help);
            if (flag.required) opt->required();
            if (flag.kind == Kind::choice) opt->check(CLI::IsMember(flag.choices));
        }
        s->add_option("--seed", common_seed[sub.name], "64-bit seed (else PATHWAY_TOOLKIT_SEED)");
        s->add_option("--output", common_output[sub.name], "output file (default standard output)");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, out);
        return std::nullopt;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, out);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const CLI::App* chosen = app.get_subcommands().front();
    const SubcommandSpec& sub = *find_subcommand(chosen->get_name());
    RunConfig config;
    config.subcommand = sub.id;

    std::set<const CLI::Option*> seen;
    for (const CLI::Option* opt : chosen->parse_order()) {
        if (!seen.insert(opt).second) continue;
        const std::string name = opt->get_lnames().front();
        if (name == "seed") {
            config.seed = parse_count(common_seed[sub.name], "seed");
            continue;
        }
        if (name == "output") {
            if (common_output[sub.name].empty()) throw UsageError("--output: empty path");
            config.output = common_output[sub.name];
            continue;
        }
        const auto flag = std::find_if(sub.flags.begin(), sub.flags.end(),
                                       [&](const FlagSpec& f) { return f.name == name; });
        if (flag->kind == Kind::flag) {
            config.params[name] = "";
            continue;
        }
        const std::string& value = values[sub.name][name];
        validate_value(*flag, value);
        config.params[name] = value;
    }
    validate_combinations(config);
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const std::string prefix = "pathwaykit " + spec_of(config.subcommand).name + ": ";
    std::string text;
    try {
        text = dispatch(config);
    } catch (const UsageError& e) {
        err << prefix << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        err << prefix << "convergence error: " << e.what() << " (partial " << table::format_number(e.partial())
            << ", error bound " << table::format_number(e.bound()) << ")\n";
        return 1;
    } catch (const DomainError& e) {
        err << prefix << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const ConsistencyError& e) {
        err << prefix << "consistency error: " << e.what() << "\n";
        return 1;
    } catch (const DegenerateError& e) {
        err << prefix << "degenerate input: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << prefix << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        err << prefix << "error: " << e.what() << "\n";
        return 1;
    }

    if (config.output.empty()) {
        out << text;
        out.flush();
        return 0;
    }
    std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    file.close();
    if (!file) {
        err << prefix << "error: cannot write " << config.output << "\n";
        return 1;
    }
    return 0;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> config;
    try {
        config = parse_args(args, out);
    } catch (const UsageError& e) {
        err << "pathwaykit: usage error: " << e.what() << "\n"
            << "run 'pathwaykit --help' for the list of subcommands\n";
        return 2;
    }
    if (!config) return 0;
    return run(*config, out, err);
}

}  // namespace pathwaykit::cli
