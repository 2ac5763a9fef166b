// Command-line front end.
//
//   cesaro moments  --measure M --n-max N
//   cesaro classify --measure M --s S --alpha A [--t-exp T --r-exp R --variant ii|iii|iv]
//   cesaro apply    --measure M --function F [--n-max N]
//   cesaro norm     --function F --kind bloch|besov|lipschitz [--p P --alpha A] [--measure M]
//   cesaro verify   --theorem boundedness|compactness|proposition21 --measure M... --p P --s S
//
// Exit codes: 0 success (including inconclusive labels), 2 input error, 3 numerical failure.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cesaro/carleson.hpp"
#include "cesaro/io.hpp"
#include "cesaro/measure.hpp"
#include "cesaro/norms.hpp"
#include "cesaro/series.hpp"
#include "cesaro/verify.hpp"

using namespace cesaro;

namespace {

constexpr int exit_input = 2;
constexpr int exit_numerical = 3;
constexpr std::size_t max_n = std::size_t{1} << 24;

struct RunConfig {
    std::vector<std::string> measures;
    std::string function;
    std::string out = "-";
    std::string ladder_csv;
    std::string theorem = "boundedness";
    std::string kind = "bloch";
    std::string variant = "ii";
    std::optional<double> p, s, alpha, t_exp, r_exp, tol;
    std::optional<std::size_t> n_max;
    std::optional<int> ladder_depth;
};

std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

MeasureQuadrature quadrature(const RunConfig& c) {
    MeasureQuadrature q;
    if (c.tol) {
        if (!(*c.tol > 0.0)) throw io::SpecError("--tol must be > 0");
        q.declared_tol = *c.tol;
    }
    return q;
}

std::size_t n_max_or(const RunConfig& c, std::size_t fallback) {
    const std::size_t n = c.n_max.value_or(fallback);
    if (n > max_n) throw io::SpecError("--n-max must be <= 2^24");
    return n;
}

const std::string& single_measure(const RunConfig& c) {
    if (c.measures.size() != 1) throw io::SpecError("exactly one --measure is required");
    return c.measures.front();
}

int cmd_moments(const RunConfig& c) {
    const RadialMeasure m = io::load_measure(single_measure(c));
    if (!c.n_max) throw io::SpecError("moments: --n-max is required");
    const auto mu = moments(m, n_max_or(c, 0), quadrature(c));
    io::write_output(c.out, io::moments_csv(mu));
    return 0;
}

int cmd_classify(const RunConfig& c) {
    const RadialMeasure m = io::load_measure(single_measure(c));
    if (!c.s) throw io::SpecError("classify: --s is required");
    CarlesonParams params{*c.s, c.alpha.value_or(0.0), c.t_exp.value_or(1.0), c.r_exp.value_or(0.0)};
    params.validate();
    ClassifyConfig cc;
    cc.depth = c.ladder_depth.value_or(14);
    if (cc.depth < 10 || cc.depth > 24) throw io::SpecError("classify: --ladder-depth must lie in [10, 24]");
    cc.variant = parse_variant(c.variant);
    cc.quadrature = quadrature(c);
    cc.profile.quadrature = cc.quadrature;
    // An explicit probe replaces the default probe set.
    if (c.t_exp || c.r_exp) cc.probes = {params};
    const CarlesonVerdict v = classify(m, params, cc);
    io::json j = io::to_json(v);
    j["variant"] = c.variant;
    io::write_output(c.out, dump(j));
    if (!c.ladder_csv.empty()) io::write_output(c.ladder_csv, io::ladder_csv(v.per_criterion.at("tail")));
    return 0;
}

int cmd_apply(const RunConfig& c) {
    const RadialMeasure m = io::load_measure(single_measure(c));
    if (c.function.empty()) throw io::SpecError("apply: --function is required");
    PowerSeries f = io::load_function(c.function, n_max_or(c, 4096));
    const std::size_t degree = std::max(f.degree(), n_max_or(c, 64));
    f = f.resized(degree);
    const auto mu = moments(m, degree, quadrature(c));
    io::write_output(c.out, io::coefficients_csv(cesaro_like(mu, f)));
    return 0;
}

int cmd_norm(const RunConfig& c) {
    if (c.function.empty()) throw io::SpecError("norm: --function is required");
    PowerSeries f = io::load_function(c.function, n_max_or(c, 4096));
    if (!c.measures.empty()) {
        const RadialMeasure m = io::load_measure(single_measure(c));
        f = cesaro_like(moments(m, f.degree(), quadrature(c)), f);
    }
    NormGrid grid;
    grid.max_exponent = c.ladder_depth.value_or(12);
    if (grid.max_exponent < 1 || grid.max_exponent > 30) throw io::SpecError("norm: --ladder-depth must lie in [1, 30]");
    if (c.tol) grid.angular.rel_tol = *c.tol;
    BesovOptions bo;
    if (c.tol) bo.rel_tol = bo.angular.rel_tol = *c.tol;

    io::json j{{"kind", c.kind}, {"degree", f.degree()}};
    NormEstimate e;
    if (c.kind == "bloch") {
        e = bloch_norm(f, grid);
    } else if (c.kind == "besov") {
        const double p = c.p.value_or(2.0);
        if (!(p > 1.0)) throw io::SpecError("norm: besov needs --p > 1");
        j["p"] = p;
        e = besov_norm(f, p, bo);
    } else if (c.kind == "lipschitz") {
        const double p = c.p.value_or(c.s.value_or(2.0));
        const double alpha = c.alpha.value_or(1.0 / p);
        if (!(p >= 1.0)) throw io::SpecError("norm: lipschitz needs --p >= 1");
        if (!(alpha > 0.0 && alpha <= 1.0)) throw io::SpecError("norm: lipschitz needs --alpha in (0, 1]");
        j["p"] = p;
        j["alpha"] = alpha;
        e = mean_lipschitz_norm(f, p, alpha, grid);
        if (!c.ladder_csv.empty())
            io::write_output(c.ladder_csv, io::profile_csv(mean_lipschitz_profile(f, p, alpha, grid)));
    } else {
        throw io::SpecError("norm: unknown --kind '" + c.kind + "' (expected bloch, besov or lipschitz)");
    }
    j["estimate"] = io::to_json(e);
    io::write_output(c.out, dump(j));
    return 0;
}

int cmd_verify(const RunConfig& c) {
    if (c.theorem == "proposition21") {
        if (c.measures.empty()) throw io::SpecError("verify: at least one --measure is required");
        std::vector<CatalogEntry> catalog;
        for (const auto& path : c.measures)
            catalog.push_back({std::filesystem::path(path).stem().string(), io::load_measure(path)});
        std::vector<std::pair<double, double>> grid{{1.0, 0.0}, {1.0, 0.5}, {2.0, 0.0}, {0.5, 1.0}};
        if (c.s) grid = {{*c.s, c.alpha.value_or(0.0)}};
        const int depth = c.ladder_depth.value_or(14);
        if (depth < 10 || depth > 24) throw io::SpecError("verify: --ladder-depth must lie in [10, 24]");
        const auto a = proposition21_experiment(catalog, grid, true, depth);
        io::json j = io::to_json(a);
        j = io::json{{"theorem", "proposition21"}, {"result", j}};
        io::write_output(c.out, dump(j));
        return 0;
    }
    const RadialMeasure m = io::load_measure(single_measure(c));
    const double p = c.p.value_or(2.0), s = c.s.value_or(2.0);
    try {
        check_exponents(p, s);
    } catch (const std::domain_error& e) {
        throw io::SpecError(std::string("verify: ") + e.what());
    }
    VerifyConfig vc;
    vc.t_depth = c.ladder_depth.value_or(12);
    if (vc.t_depth < 2 || vc.t_depth > 16) throw io::SpecError("verify: --ladder-depth must lie in [2, 16]");
    vc.degree = n_max_or(c, std::size_t{1} << (vc.t_depth + 5));
    vc.classify.quadrature = quadrature(c);
    vc.classify.profile.quadrature = vc.classify.quadrature;
    VerificationReport r;
    if (c.theorem == "boundedness")
        r = boundedness_experiment(m, p, s, vc);
    else if (c.theorem == "compactness")
        r = compactness_experiment(m, p, s, vc);
    else
        throw io::SpecError("verify: unknown --theorem '" + c.theorem +
                            "' (expected boundedness, compactness or proposition21)");
    io::write_output(c.out, dump(io::to_json(r)));
    if (!c.ladder_csv.empty()) io::write_output(c.ladder_csv, io::report_ladder_csv(r));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cesaro-like operators, Carleson classification and norm estimates"};
    app.require_subcommand(1);
    RunConfig c;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "Output path ('-' for stdout)");
        sub->add_option("--tol", c.tol, "Tolerance override");
    };
    auto* moments_cmd = app.add_subcommand("moments", "Moments mu_0..mu_N as CSV");
    moments_cmd->add_option("--measure", c.measures, "Measure spec file")->required()->expected(1);
    moments_cmd->add_option("--n-max", c.n_max, "Largest moment order");
    common(moments_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "Carleson classification verdict as JSON");
    classify_cmd->add_option("--measure", c.measures, "Measure spec file")->required()->expected(1);
    classify_cmd->add_option("--s", c.s, "Carleson exponent s > 0");
    classify_cmd->add_option("--alpha", c.alpha, "Logarithmic exponent alpha >= 0");
    classify_cmd->add_option("--t-exp", c.t_exp, "Integral test exponent t > 0");
    classify_cmd->add_option("--r-exp", c.r_exp, "Integral test exponent 0 <= r < s");
    classify_cmd->add_option("--variant", c.variant, "Integral test variant: ii, iii or iv");
    classify_cmd->add_option("--ladder-depth", c.ladder_depth, "Dyadic ladder depth (default 14)");
    classify_cmd->add_option("--ladder-csv", c.ladder_csv, "Also write the tail ladder as CSV");
    common(classify_cmd);

    auto* apply_cmd = app.add_subcommand("apply", "Coefficients of C_mu f as CSV");
    apply_cmd->add_option("--measure", c.measures, "Measure spec file")->required()->expected(1);
    apply_cmd->add_option("--function", c.function, "Function spec file")->required();
    apply_cmd->add_option("--n-max", c.n_max, "Output degree (f is zero-padded; default max(deg f, 64))");
    common(apply_cmd);

    auto* norm_cmd = app.add_subcommand("norm", "Norm estimate as JSON");
    norm_cmd->add_option("--function", c.function, "Function spec file")->required();
    norm_cmd->add_option("--measure", c.measures, "Apply C_mu first")->expected(1);
    norm_cmd->add_option("--kind", c.kind, "bloch, besov or lipschitz");
    norm_cmd->add_option("--p", c.p, "Exponent p");
    norm_cmd->add_option("--s", c.s, "Exponent s (lipschitz: p = s when --p is absent)");
    norm_cmd->add_option("--alpha", c.alpha, "Lipschitz order (default 1/p)");
    norm_cmd->add_option("--n-max", c.n_max, "Degree for builtin functions (default 4096)");
    norm_cmd->add_option("--ladder-depth", c.ladder_depth, "Radial ladder depth (default 12)");
    norm_cmd->add_option("--ladder-csv", c.ladder_csv, "Lipschitz profile CSV");
    common(norm_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Verification report as JSON");
    verify_cmd->add_option("--theorem", c.theorem, "boundedness, compactness or proposition21");
    verify_cmd->add_option("--measure", c.measures, "Measure spec file(s)")->required();
    verify_cmd->add_option("--p", c.p, "Besov exponent p > 1");
    verify_cmd->add_option("--s", c.s, "Target exponent s > 1 (proposition21: Carleson s)");
    verify_cmd->add_option("--alpha", c.alpha, "proposition21: Carleson alpha");
    verify_cmd->add_option("--n-max", c.n_max, "Truncation degree");
    verify_cmd->add_option("--ladder-depth", c.ladder_depth, "t-ladder depth (default 12)");
    verify_cmd->add_option("--ladder-csv", c.ladder_csv, "Also write the ratio ladder as CSV");
    common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }

    try {
        if (moments_cmd->parsed()) return cmd_moments(c);
        if (classify_cmd->parsed()) return cmd_classify(c);
        if (apply_cmd->parsed()) return cmd_apply(c);
        if (norm_cmd->parsed()) return cmd_norm(c);
        if (verify_cmd->parsed()) return cmd_verify(c);
    } catch (const io::SpecError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const quad::QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_input;
}
