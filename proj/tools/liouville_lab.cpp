// liouville-lab: command-line front end for the comparison-principle
// laboratory. Subcommands load a JSON config and emit deterministic JSON/CSV
// reports; --paper-suite reproduces the full verification battery in one
// invocation. Exit codes: 0 pass/determinate, 1 mathematical failure,
// 2 indeterminate, 3 config error.

#include <CLI11.hpp>

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "liouville/growth.hpp"
#include "liouville/kernels.hpp"
#include "liouville/regimes.hpp"
#include "liouville/serialize.hpp"
#include "liouville/version.hpp"
#include "liouville/weak_form.hpp"

using namespace liouville;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitConfigError = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
}

// All report files funnel through one in-memory bundle so determinism can be
// checked by byte comparison before anything touches the filesystem.
struct Bundle {
    std::map<std::string, std::string> files;

    void add_json(const std::string& name, const json& j) {
        files[name] = j.dump(2) + "\n";
    }
    void add_text(const std::string& name, std::string text) {
        files[name] = std::move(text);
    }
    void write(const std::string& dir) const {
        std::filesystem::create_directories(dir);
        for (const auto& [name, content] : files) {
            std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + name + " under " + dir);
            out << content;
        }
    }
};

json run_metadata(const json& config_echo, std::uint64_t seed) {
    return json{{"tool", kToolName},
                {"version", kToolVersion},
                {"kernel_lane", std::string(kern::lane_name(kern::active_lane()))},
                {"seed", seed},
                {"config", config_echo}};
}

FluxField field_from_config(const json& cfg) {
    const std::string op = cfg.value("operator", "p_laplacian");
    const int n = cfg.value("n", 2);
    const double p = cfg.value("p", 2.0);
    try {
        if (op == "p_laplacian") return make_p_laplacian(n, p);
        if (op == "modified_p_laplacian") return make_modified_p_laplacian(n, p);
        if (op == "weighted_p_laplacian") {
            const std::string w = cfg.value("weight", "inv_one_plus_r2");
            if (w == "one")
                return make_weighted_p_laplacian(
                    n, p, [](std::span<const double>) { return 1.0; }, 1.0,
                    [](double) { return 1.0; });
            if (w == "zero")
                return make_weighted_p_laplacian(
                    n, p, [](std::span<const double>) { return 0.0; }, 1.0,
                    [](double) { return 0.0; });
            if (w == "inv_one_plus_r2")
                return make_weighted_p_laplacian(
                    n, p,
                    [](std::span<const double> x) {
                        double s = 0.0;
                        for (double c : x) s += c * c;
                        return 1.0 / (1.0 + s);
                    },
                    1.0, [](double r) { return 1.0 / (1.0 + r * r); });
            throw ConfigError("unknown weight: " + w +
                              " (expected one|zero|inv_one_plus_r2)");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid operator parameters: ") + e.what());
    }
    throw ConfigError("unknown operator: " + op);
}

int cmd_check_operator(const json& cfg, Bundle& bundle, std::uint64_t seed) {
    const FluxField field = field_from_config(cfg);
    SamplePlan plan;
    if (cfg.contains("sampler")) plan = cfg.at("sampler").get<SamplePlan>();
    plan.seed = seed;
    const double alpha = cfg.value("alpha", field.p);
    if (!(alpha > 1.0)) throw ConfigError("alpha must be > 1");

    const auto mono = check_monotonicity(field, plan);
    const auto amono = check_alpha_monotonicity(field, alpha, plan);

    json out = run_metadata(cfg, seed);
    out["operator"] = field.name;
    out["alpha"] = alpha;
    out["monotonicity"] = mono;
    out["alpha_monotonicity"] = amono;
    out["pass"] = mono.pass && amono.pass;
    bundle.add_json("check_operator.json", out);

    std::printf("%s: monotonicity %s (min_pairing %s), alpha=%s %s (k_hat %s)\n",
                field.name.c_str(), mono.pass ? "pass" : "FAIL",
                fmt17(mono.min_pairing).c_str(), fmt17(alpha).c_str(),
                amono.pass ? "pass" : "FAIL", fmt17(amono.k_hat).c_str());
    if (amono.ratio_blowup)
        std::printf("  ratio blows up toward the diagonal: per-stratum max %s %s %s %s\n",
                    fmt17(amono.stratum_max_ratio[0]).c_str(),
                    fmt17(amono.stratum_max_ratio[1]).c_str(),
                    fmt17(amono.stratum_max_ratio[2]).c_str(),
                    fmt17(amono.stratum_max_ratio[3]).c_str());
    return (mono.pass && amono.pass) ? kExitPass : kExitFail;
}

std::string weak_csv(const std::vector<std::pair<std::string, WeakResidualReport>>& rows) {
    std::string csv = "operator,R,residual,error,scale,pass\n";
    for (const auto& [op, r] : rows)
        csv += op + "," + fmt17(r.R) + "," + fmt17(r.residual) + "," +
               fmt17(r.abs_error_estimate) + "," + fmt17(r.scale) + "," +
               (r.pass ? "true" : "false") + "\n";
    return csv;
}

int cmd_verify_example(const json& cfg, Bundle& bundle, std::uint64_t seed) {
    ExampleParams params = cfg.get<ExampleParams>();
    const bool c_given = cfg.contains("c");
    json out = run_metadata(cfg, seed);

    if (auto err = example_params_error(params)) {
        out["refused"] = true;
        out["violated_hypothesis"] = *err;
        bundle.add_json("verify_example.json", out);
        std::printf("refused: %s\n", err->c_str());
        return kExitFail;
    }

    if (!c_given) {
        const auto derived = params.family == ExampleFamily::Example1
                                 ? derive_suitable_c(params)
                                 : derive_suitable_c_example23(params);
        if (!derived) {
            out["refused"] = true;
            out["violated_hypothesis"] =
                "no admissible amplitude c on the verification grid";
            bundle.add_json("verify_example.json", out);
            std::printf("refused: no admissible amplitude c\n");
            return kExitFail;
        }
        params.c = *derived;
        out["derived_c"] = *derived;
        std::printf("derived amplitude c = %s\n", fmt17(*derived).c_str());
    }
    out["c"] = params.c;

    const SolutionPair pair = build_example_pair(params);
    out["pair"] = pair.description;

    std::vector<double> cutoffs = {10.0, 20.0, 40.0};
    if (cfg.contains("cutoffs")) cutoffs = cfg.at("cutoffs").get<std::vector<double>>();
    QuadratureSpec quad;
    if (cfg.contains("quadrature")) quad = cfg.at("quadrature").get<QuadratureSpec>();
    const std::string op = cfg.value("operator", "both");
    std::vector<std::pair<std::string, FluxField>> fields;
    if (op == "p_laplacian" || op == "both")
        fields.emplace_back("p_laplacian", make_p_laplacian(params.n, params.alpha));
    if (op == "modified_p_laplacian" || op == "both")
        fields.emplace_back("modified_p_laplacian",
                            make_modified_p_laplacian(params.n, params.alpha));
    if (fields.empty())
        throw ConfigError("unknown operator: " + op +
                          " (expected p_laplacian|modified_p_laplacian|both)");

    bool any_fail = false, any_indeterminate = false;
    std::vector<std::pair<std::string, WeakResidualReport>> rows;
    json reports = json::array();
    for (const auto& [name, field] : fields) {
        for (const auto& rep :
             weak_residual_family(field, params.q, pair, cutoffs, quad)) {
            rows.emplace_back(name, rep);
            json jr = rep;
            jr["operator"] = name;
            reports.push_back(jr);
            if (rep.status == CheckStatus::Fail) any_fail = true;
            if (rep.status == CheckStatus::Indeterminate) any_indeterminate = true;
            std::printf("%s R=%s: residual %s (scale %s) %s\n", name.c_str(),
                        fmt17(rep.R).c_str(), fmt17(rep.residual).c_str(),
                        fmt17(rep.scale).c_str(), status_name(rep.status));
        }
    }

    const std::size_t mc_samples = cfg.value("mc_samples", std::size_t{0});
    if (mc_samples > 0) {
        json mcj = json::array();
        for (const auto& [name, field] : fields) {
            const auto rep = weak_residual(field, params.q, pair,
                                           make_cutoff(cutoffs.front()), quad);
            const auto mc = mc_oracle_residual(field, params.q, pair,
                                               make_cutoff(cutoffs.front()),
                                               mc_samples, seed);
            const bool consistent =
                std::fabs(mc.value - rep.residual) <=
                std::max(0.01 * rep.scale, 3.0 * mc.std_error);
            if (!consistent) any_fail = true;
            mcj.push_back(json{{"operator", name},
                               {"R", cutoffs.front()},
                               {"mc_value", mc.value},
                               {"mc_std_error", mc.std_error},
                               {"radial_value", rep.residual},
                               {"consistent", consistent}});
            std::printf("%s monte carlo cross-check: %s +- %s vs %s (%s)\n",
                        name.c_str(), fmt17(mc.value).c_str(),
                        fmt17(mc.std_error).c_str(), fmt17(rep.residual).c_str(),
                        consistent ? "consistent" : "INCONSISTENT");
        }
        out["mc_cross_check"] = mcj;
    }

    out["reports"] = reports;
    out["pass"] = !any_fail && !any_indeterminate;
    bundle.add_json("verify_example.json", out);
    bundle.add_text("verify_example.csv", weak_csv(rows));
    if (any_fail) return kExitFail;
    return any_indeterminate ? kExitIndeterminate : kExitPass;
}

int cmd_growth_scan(const json& cfg, Bundle& bundle, std::uint64_t seed) {
    GrowthFunctionalSpec spec;
    const std::string kind = cfg.value("kind", "T4");
    if (kind == "T4")
        spec.kind = GrowthKind::T4;
    else if (kind == "T7")
        spec.kind = GrowthKind::T7;
    else
        throw ConfigError("unknown growth kind: " + kind + " (expected T4|T7)");

    if (!cfg.contains("pair")) throw ConfigError("growth-scan config needs a pair");
    const json& pj = cfg.at("pair");
    SolutionPair pair;
    if (pj.contains("constant_gap")) {
        pair = make_constant_gap_pair(pj.value("n", 3), pj.value("alpha", 2.0),
                                      pj.value("q", 4.0),
                                      pj.at("constant_gap").get<double>());
    } else {
        const ExampleParams params = pj.get<ExampleParams>();
        if (auto err = example_params_error(params)) throw ConfigError(*err);
        pair = build_example_pair(params);
    }
    spec.n = pair.n;
    spec.alpha = pair.alpha;
    spec.q = pair.q;
    spec.nu = cfg.value("nu", std::max(1e-3, pair.alpha - 1.0));
    if (spec.kind == GrowthKind::T4)
        if (auto err = growth_spec_error(spec)) throw ConfigError(*err);

    RGrid grid;
    if (cfg.contains("grid")) {
        const json& g = cfg.at("grid");
        grid.rmin = g.value("rmin", grid.rmin);
        grid.rmax = g.value("rmax", grid.rmax);
        grid.points_per_decade = g.value("points_per_decade", grid.points_per_decade);
    }
    QuadratureSpec quad;
    if (cfg.contains("quadrature")) quad = cfg.at("quadrature").get<QuadratureSpec>();
    quad.seed = seed;

    const GrowthSeries series = growth_scan(pair, spec, grid, quad);

    std::string csv = "R,F\n";
    for (const auto& p : series.points) csv += fmt17(p.R) + "," + fmt17(p.F) + "\n";
    bundle.add_text("growth_series.csv", csv);

    json summary = series;
    summary["kind"] = kind;
    json out = run_metadata(cfg, seed);
    out["pair"] = pair.description;
    out["nu"] = spec.nu;
    out["summary"] = summary;
    bundle.add_json("growth_summary.json", out);

    std::printf("%s on %s: slope %s, classification %s", kind.c_str(),
                pair.description.c_str(), fmt17(series.slope).c_str(),
                std::string(growth_class_name(series.classification)).c_str());
    if (series.limit_estimate)
        std::printf(", limit %s", fmt17(*series.limit_estimate).c_str());
    std::printf("\n");
    return series.classification == GrowthClass::Indeterminate ? kExitIndeterminate
                                                               : kExitPass;
}

int cmd_classify(const json& cfg, Bundle& bundle, std::uint64_t seed) {
    std::vector<RegimeQuery> queries;
    if (cfg.contains("queries"))
        queries = cfg.at("queries").get<std::vector<RegimeQuery>>();
    else
        queries.push_back(cfg.get<RegimeQuery>());

    json results = json::array();
    for (const auto& q : queries) {
        RegimeDecision d;
        try {
            d = classify(q);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("invalid query: ") + e.what());
        }
        json row;
        row["query"] = q;
        row["decision"] = d;
        results.push_back(row);
        std::string tags;
        for (Theorem t : d.applicable) {
            if (!tags.empty()) tags += ",";
            tags += theorem_name(t);
        }
        std::printf("n=%d alpha=%s q=%s -> {%s}%s\n", q.n, fmt17(q.alpha).c_str(),
                    fmt17(q.q).c_str(), tags.c_str(),
                    d.uncovered_gap ? " (uncovered gap)" : "");
    }
    json out = run_metadata(cfg, seed);
    out["results"] = results;
    bundle.add_json("classify.json", out);
    return kExitPass;
}

// ---------------- paper suite ----------------

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    json details;
};

struct SuiteRun {
    Bundle bundle;
    std::vector<CriterionResult> criteria;
    bool all_pass = true;

    void record(int id, std::string name, bool pass, json details) {
        criteria.push_back({id, std::move(name), pass, std::move(details)});
        all_pass = all_pass && pass;
    }
};

ExampleParams mk_params(ExampleFamily fam, int n, double alpha, double q, double c,
                        std::optional<double> mu = std::nullopt,
                        std::optional<double> lambda = std::nullopt) {
    ExampleParams p;
    p.family = fam;
    p.n = n;
    p.alpha = alpha;
    p.q = q;
    p.c = c;
    p.mu = mu;
    p.lambda = lambda;
    return p;
}

SuiteRun run_paper_suite(std::uint64_t seed) {
    SuiteRun run;

    // 1: pairing and ratio checks across the operator battery
    {
        SamplePlan plan;
        plan.seed = seed;
        plan.count = 100000;
        bool pass = true;
        std::string csv = "operator,p,n,mono_pass,min_pairing,alpha_pass,k_hat\n";
        json cases = json::array();
        for (double p : {1.2, 1.5, 2.0}) {
            for (int n : {1, 2, 3}) {
                std::vector<std::pair<std::string, FluxField>> fields;
                fields.emplace_back("p_laplacian", make_p_laplacian(n, p));
                if (n >= 2)  // the coordinate-wise family is defined for n >= 2 only
                    fields.emplace_back("modified_p_laplacian",
                                        make_modified_p_laplacian(n, p));
                fields.emplace_back(
                    "weighted_p_laplacian",
                    make_weighted_p_laplacian(
                        n, p,
                        [](std::span<const double> x) {
                            double s = 0.0;
                            for (double c : x) s += c * c;
                            return 1.0 / (1.0 + s);
                        },
                        1.0, [](double r) { return 1.0 / (1.0 + r * r); }));
                for (const auto& [name, field] : fields) {
                    const auto mono = check_monotonicity(field, plan);
                    const auto amono = check_alpha_monotonicity(field, p, plan);
                    bool ok = mono.pass && mono.min_pairing >= -1e-12 && amono.pass;
                    if (p == 2.0) ok = ok && std::fabs(amono.k_hat - 1.0) <= 1e-9;
                    pass = pass && ok;
                    csv += name + "," + fmt17(p) + "," + std::to_string(n) + "," +
                           (mono.pass ? "true" : "false") + "," +
                           fmt17(mono.min_pairing) + "," +
                           (amono.pass ? "true" : "false") + "," + fmt17(amono.k_hat) +
                           "\n";
                    cases.push_back(json{{"operator", name},
                                         {"p", p},
                                         {"n", n},
                                         {"pass", ok},
                                         {"min_pairing", mono.min_pairing},
                                         {"k_hat", amono.k_hat}});
                }
            }
        }
        run.bundle.add_text("operator_checks.csv", csv);
        run.record(1, "operator monotonicity and alpha-monotonicity battery", pass,
                   json{{"cases", cases}});
    }

    // 2: mismatched alpha is detected near the diagonal
    {
        SamplePlan plan;
        plan.seed = seed;
        plan.count = 100000;
        const auto rep =
            check_alpha_monotonicity(make_p_laplacian(2, 1.5), 2.0, plan);
        const bool pass =
            rep.ratio_blowup && !rep.pass && rep.stratum_max_ratio[3] > 1e3;
        run.record(2, "alpha mismatch detection (p=1.5 vs alpha=2)", pass,
                   json{{"near_diagonal_max_ratio", rep.stratum_max_ratio[3]},
                        {"ratio_blowup", rep.ratio_blowup}});
    }

    // 3: example1 end to end
    {
        const auto params = mk_params(ExampleFamily::Example1, 3, 2.0, 4.0, 1.0);
        const auto c = derive_suitable_c(params);
        const double expected_c = std::cbrt(2.0 / 9.0);
        bool pass = c.has_value() && std::fabs(*c - expected_c) <= 1e-3;
        json details;
        details["derived_c"] = c ? json(*c) : json(nullptr);
        details["expected_c"] = expected_c;
        std::vector<std::pair<std::string, WeakResidualReport>> rows;
        if (c) {
            const auto pair =
                build_example1(mk_params(ExampleFamily::Example1, 3, 2.0, 4.0, *c));
            const double Rs[] = {1.0, 10.0, 100.0};
            json mcj = json::array();
            for (const auto& [name, field] :
                 {std::pair<std::string, FluxField>{"p_laplacian",
                                                    make_p_laplacian(3, 2.0)},
                  std::pair<std::string, FluxField>{"modified_p_laplacian",
                                                    make_modified_p_laplacian(3, 2.0)}}) {
                for (const auto& rep : weak_residual_family(field, 4.0, pair, Rs)) {
                    rows.emplace_back(name, rep);
                    pass = pass && rep.status == CheckStatus::Pass;
                }
                const auto rep10 = weak_residual(field, 4.0, pair, make_cutoff(10.0));
                const auto mc = mc_oracle_residual(field, 4.0, pair, make_cutoff(10.0),
                                                   1000000, seed);
                const bool consistent =
                    std::fabs(mc.value - rep10.residual) <=
                    std::max(0.01 * rep10.scale, 3.0 * mc.std_error);
                pass = pass && consistent;
                mcj.push_back(json{{"operator", name},
                                   {"mc_value", mc.value},
                                   {"mc_std_error", mc.std_error},
                                   {"radial_value", rep10.residual},
                                   {"consistent", consistent}});
            }
            details["mc_cross_check"] = mcj;
        }
        run.bundle.add_text("example1_weak.csv", weak_csv(rows));
        run.record(3, "example1 end-to-end verification (n=3, alpha=2, q=4)", pass,
                   details);
    }

    // 4 + 5: growth classifications and the reduced-form identities
    {
        struct Case {
            std::string name;
            SolutionPair pair;
            GrowthFunctionalSpec spec;
            GrowthClass expected;
        };
        std::vector<Case> cases;
        const auto ex1pair =
            build_example1(mk_params(ExampleFamily::Example1, 3, 2.0, 4.0, 1.0));
        GrowthFunctionalSpec t4{GrowthKind::T4, 3, 2.0, 4.0, 1.0};
        cases.push_back({"example1_nu1", ex1pair, t4, GrowthClass::PositiveConstant});
        GrowthFunctionalSpec t4b = t4;
        t4b.nu = 0.5;
        cases.push_back({"example1_nu05", ex1pair, t4b, GrowthClass::PositiveConstant});
        GrowthFunctionalSpec t7_2{GrowthKind::T7, 3, 2.0, 0.5, 0.0};
        cases.push_back({"example2",
                         build_example23(mk_params(ExampleFamily::Example23, 3, 2.0,
                                                   0.5, 1.0, 0.1, 2.0)),
                         t7_2, GrowthClass::PositiveConstant});
        cases.push_back({"example3",
                         build_example23(mk_params(ExampleFamily::Example23, 3, 2.0,
                                                   0.5, 1.0, 0.1, 2.5)),
                         t7_2, GrowthClass::TendsToZero});
        GrowthFunctionalSpec t7_4{GrowthKind::T7, 3, 1.2, 0.5, 0.0};
        cases.push_back({"example4",
                         build_example1(mk_params(ExampleFamily::Example1, 3, 1.2,
                                                  0.5, 1.0)),
                         t7_4, GrowthClass::PositiveConstant});
        GrowthFunctionalSpec t4c{GrowthKind::T4, 3, 2.0, 4.0, 1.0};
        cases.push_back({"constant_gap", make_constant_gap_pair(3, 2.0, 4.0, 1.0), t4c,
                         GrowthClass::Diverges});

        bool pass4 = true;
        json details4 = json::array();
        for (const auto& c : cases) {
            const auto series = growth_scan(c.pair, c.spec);
            std::string csv = "R,F\n";
            for (const auto& p : series.points)
                csv += fmt17(p.R) + "," + fmt17(p.F) + "\n";
            run.bundle.add_text("growth_" + c.name + ".csv", csv);
            bool ok = series.classification == c.expected;
            if (c.expected == GrowthClass::PositiveConstant)
                ok = ok && std::fabs(series.slope) <= 0.05;
            if (c.expected == GrowthClass::TendsToZero) ok = ok && series.slope <= -0.1;
            if (c.expected == GrowthClass::Diverges) ok = ok && series.slope >= 0.1;
            pass4 = pass4 && ok;
            json d = series;
            d["case"] = c.name;
            d["expected"] = std::string(growth_class_name(c.expected));
            d["pass"] = ok;
            details4.push_back(d);
        }
        run.record(4, "growth classifications across the example families", pass4,
                   json{{"cases", details4}});

        bool pass5 = true;
        double worst = 0.0;
        RGrid grid;
        const auto ex4pair =
            build_example1(mk_params(ExampleFamily::Example1, 3, 1.2, 0.5, 1.0));
        GrowthFunctionalSpec red4{GrowthKind::T4, 3, 1.2, 0.5, 1.2 - 1.0};
        GrowthFunctionalSpec red4b{GrowthKind::T4, 3, 2.0, 4.0, 1.0};
        for (double R : grid.points()) {
            for (const auto& [pair, spec] :
                 {std::pair<const SolutionPair&, const GrowthFunctionalSpec&>{ex4pair,
                                                                              red4},
                  std::pair<const SolutionPair&, const GrowthFunctionalSpec&>{ex1pair,
                                                                              red4b}}) {
                const double a = growth_T4(pair, spec, R);
                const double b = remark1_growth(pair, spec, R);
                worst = std::max(worst, std::fabs(a - b) /
                                            std::max(std::fabs(b), 1e-300));
            }
        }
        const auto exq1 =
            build_example1(mk_params(ExampleFamily::Example1, 3, 1.2, 1.0, 1.0));
        GrowthFunctionalSpec red7{GrowthKind::T7, 3, 1.2, 1.0, 0.0};
        for (double R : grid.points()) {
            const double a = growth_T7(exq1, red7, R);
            const double b = remark2_growth(exq1, red7, R);
            worst =
                std::max(worst, std::fabs(a - b) / std::max(std::fabs(b), 1e-300));
        }
        pass5 = worst <= 1e-12;
        run.record(5, "reduced-form identities (nu = alpha-1 and q = 1)", pass5,
                   json{{"worst_relative_difference", worst}});
    }

    // 6: regime classification table
    {
        struct Row {
            RegimeQuery q;
            std::vector<std::string> expect;
            bool expect_gap;
        };
        const std::vector<Row> table = {
            {{1, 1.5, 2.0}, {"T1"}, false},
            {{1, 2.0, 0.5}, {"T1"}, false},
            {{2, 2.0, 5.0}, {"T2"}, false},
            {{4, 2.0, 2.0}, {"T3"}, false},
            {{4, 2.0, 2.0 + 1e-6}, {"T4", "T5", "T6"}, false},
            {{3, 2.0, 2.0}, {"T3"}, false},
            {{3, 2.0, 4.0}, {"T4", "T5", "T6"}, false},
            {{3, 2.0, 1.0}, {"T7", "T8"}, false},
            {{3, 1.2, 0.5}, {"T7"}, false},
            {{3, 1.5, 0.3}, {"T7"}, false},
            {{2, 1.9, 1.5}, {"T3"}, false},
            {{3, 1.5, 0.7}, {}, true},
        };
        bool pass = true;
        json rows = json::array();
        for (const auto& row : table) {
            const auto d = classify(row.q);
            std::vector<std::string> got;
            for (Theorem t : d.applicable) got.emplace_back(theorem_name(t));
            const bool ok = got == row.expect && d.uncovered_gap == row.expect_gap;
            pass = pass && ok;
            json jr;
            jr["query"] = row.q;
            jr["decision"] = d;
            jr["pass"] = ok;
            rows.push_back(jr);
        }
        run.bundle.add_json("classify.json", json{{"results", rows}});
        run.record(6, "regime classification table (12 triples)", pass,
                   json{{"rows", table.size()}});
    }

    // 7: constant-gap pairs are not weak solutions; the residual is -phi mass
    {
        const auto pair = make_constant_gap_pair(3, 2.0, 1.0, 1.0);
        const auto rep = weak_residual(make_p_laplacian(3, 2.0), 1.0, pair,
                                       make_cutoff(1.0));
        auto phi_batch = [phi = make_cutoff(1.0)](const std::vector<double>& r,
                                                  std::vector<double>& f) {
            for (std::size_t i = 0; i < r.size(); ++i)
                f[i] = phi.value(r[i]) * r[i] * r[i];
        };
        const auto mass = integrate_radial(phi_batch, 2.0, 8, 12);
        const double phi_mass = unit_sphere_area(3) * mass.value;
        const bool pass = rep.residual < 0.0 &&
                          std::fabs(rep.residual + phi_mass) <= 0.01 * phi_mass;
        run.record(7, "constant-gap nonexistence smoke test", pass,
                   json{{"residual", rep.residual}, {"phi_mass", phi_mass}});
    }

    return run;
}

json suite_summary(const SuiteRun& run, std::uint64_t seed, bool deterministic) {
    json criteria = json::array();
    for (const auto& c : run.criteria)
        criteria.push_back(json{{"id", c.id},
                                {"name", c.name},
                                {"pass", c.pass},
                                {"details", c.details}});
    criteria.push_back(json{{"id", 8},
                            {"name", "byte-identical report bundle across reruns"},
                            {"pass", deterministic},
                            {"details", json::object()}});
    return json{{"tool", kToolName},
                {"version", kToolVersion},
                {"kernel_lane", std::string(kern::lane_name(kern::active_lane()))},
                {"seed", seed},
                {"criteria", criteria},
                {"overall_pass", run.all_pass && deterministic}};
}

int cmd_paper_suite(const std::string& out_dir, std::uint64_t seed) {
    // two full runs; the bundles must agree byte for byte
    SuiteRun first = run_paper_suite(seed);
    SuiteRun second = run_paper_suite(seed);
    const bool deterministic = first.bundle.files == second.bundle.files;

    first.bundle.add_json("summary.json", suite_summary(first, seed, deterministic));
    first.bundle.write(out_dir);

    for (const auto& c : first.criteria)
        std::printf("[%s] criterion %d: %s\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.name.c_str());
    std::printf("[%s] criterion 8: byte-identical report bundle across reruns\n",
                deterministic ? "PASS" : "FAIL");
    const bool all = first.all_pass && deterministic;
    std::printf("paper suite: %s (reports in %s)\n", all ? "all criteria pass" : "FAILURES",
                out_dir.c_str());
    return all ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for comparison principles of quasilinear "
                 "differential inequalities"};
    app.fallthrough();

    std::string config_path, out_dir = "liouville_out", kernel = "auto";
    std::int64_t seed_opt = -1;
    bool paper_suite = false;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory for reports");
    app.add_option("--seed", seed_opt, "seed override (default 0)");
    app.add_option("--kernel", kernel, "kernel lane: auto|scalar|avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    app.add_flag("--paper-suite", paper_suite,
                 "run the full verification battery and write its report bundle");

    auto* sub_check = app.add_subcommand("check-operator",
                                         "monotonicity checks for a flux field");
    auto* sub_verify = app.add_subcommand("verify-example",
                                          "weak-form verification of a built-in pair");
    auto* sub_growth = app.add_subcommand("growth-scan",
                                          "growth functional scan and classification");
    auto* sub_classify = app.add_subcommand("classify",
                                            "regime classification for (n, alpha, q)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (kernel == "scalar") kern::force_lane(kern::Lane::Scalar);
        if (kernel == "avx2") kern::force_lane(kern::Lane::Avx2);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc = kExitPass;
    try {
        if (paper_suite) {
            rc = cmd_paper_suite(out_dir, seed_opt >= 0 ? std::uint64_t(seed_opt) : 0);
        } else {
            if (app.get_subcommands().empty()) {
                std::fprintf(stderr, "error: no subcommand (try --help)\n");
                return kExitConfigError;
            }
            if (config_path.empty()) {
                std::fprintf(stderr, "error: --config is required\n");
                return kExitConfigError;
            }
            const json cfg = load_config(config_path);
            const std::uint64_t seed = seed_opt >= 0 ? std::uint64_t(seed_opt)
                                                     : cfg.value("seed", std::uint64_t{0});
            Bundle bundle;
            if (sub_check->parsed())
                rc = cmd_check_operator(cfg, bundle, seed);
            else if (sub_verify->parsed())
                rc = cmd_verify_example(cfg, bundle, seed);
            else if (sub_growth->parsed())
                rc = cmd_growth_scan(cfg, bundle, seed);
            else if (sub_classify->parsed())
                rc = cmd_classify(cfg, bundle, seed);
            bundle.write(out_dir);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFail;
    }
    const auto t1 = std::chrono::steady_clock::now();
    std::fprintf(stderr, "wall time: %.2fs\n",
                 std::chrono::duration<double>(t1 - t0).count());
    return rc;
}
