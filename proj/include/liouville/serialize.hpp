#pragma once

#include <json.hpp>

#include "liouville/flux_field.hpp"
#include "liouville/growth.hpp"
#include "liouville/radial.hpp"
#include "liouville/regimes.hpp"
#include "liouville/weak_form.hpp"

// JSON bindings for the report and config types exchanged by the CLI.
// Key names follow the documented wire formats: sample plans are
// {seed, count, box_bounds, tolerance}; monotonicity reports are
// {pass, min_pairing, k_hat, violations: [...]} plus diagnostics.

namespace liouville {

using nlohmann::json;

inline void to_json(json& j, const SamplePlan& p) {
    j = json{{"seed", p.seed},
             {"count", p.count},
             {"box_bounds", p.box},
             {"tolerance", p.tolerance},
             {"stratified", p.stratified}};
}

inline void from_json(const json& j, SamplePlan& p) {
    p = SamplePlan{};
    if (j.contains("seed")) j.at("seed").get_to(p.seed);
    if (j.contains("count")) j.at("count").get_to(p.count);
    if (j.contains("box_bounds")) j.at("box_bounds").get_to(p.box);
    if (j.contains("tolerance")) j.at("tolerance").get_to(p.tolerance);
    if (j.contains("stratified")) j.at("stratified").get_to(p.stratified);
}

inline void to_json(json& j, const Violation& v) {
    j = json{{"reason", v.reason},
             {"value", v.value},
             {"x", v.x},
             {"xi1", v.xi1},
             {"xi2", v.xi2}};
}

inline void to_json(json& j, const MonotonicityReport& r) {
    j = json{{"pass", r.pass},
             {"min_pairing", r.min_pairing},
             {"k_hat", r.k_hat},
             {"violations", r.violations},
             {"violation_count", r.violation_count},
             {"samples_checked", r.samples_checked},
             {"tolerance", r.tolerance},
             {"stratum_max_ratio", r.stratum_max_ratio},
             {"ratio_blowup", r.ratio_blowup}};
}

inline void to_json(json& j, const ExampleParams& p) {
    j = json{{"family", std::string(family_name(p.family))},
             {"n", p.n},
             {"alpha", p.alpha},
             {"q", p.q},
             {"c", p.c}};
    if (p.mu) j["mu"] = *p.mu;
    if (p.lambda) j["lambda"] = *p.lambda;
}

inline void from_json(const json& j, ExampleParams& p) {
    p = ExampleParams{};
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "example1")
        p.family = ExampleFamily::Example1;
    else if (fam == "example23")
        p.family = ExampleFamily::Example23;
    else
        throw std::invalid_argument("unknown example family: " + fam);
    j.at("n").get_to(p.n);
    j.at("alpha").get_to(p.alpha);
    j.at("q").get_to(p.q);
    if (j.contains("c")) j.at("c").get_to(p.c);
    if (j.contains("mu")) p.mu = j.at("mu").get<double>();
    if (j.contains("lambda")) p.lambda = j.at("lambda").get<double>();
}

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Indeterminate: return "indeterminate";
    }
    return "?";
}

inline void to_json(json& j, const WeakResidualReport& r) {
    j = json{{"R", r.R},
             {"residual", r.residual},
             {"error", r.abs_error_estimate},
             {"scale", r.scale},
             {"pass", r.pass},
             {"status", status_name(r.status)},
             {"flux_term", r.flux_term},
             {"zero_order_term", r.zero_order_term}};
}

inline void to_json(json& j, const QuadratureSpec& s) {
    j = json{{"scheme",
              s.scheme == QuadratureSpec::Scheme::RadialGauss ? "radial_gauss"
                                                              : "monte_carlo"},
             {"panels_per_decade", s.panels_per_decade},
             {"nodes_per_panel", s.nodes_per_panel},
             {"mc_samples", s.mc_samples},
             {"seed", s.seed},
             {"rmax", s.rmax}};
}

inline void from_json(const json& j, QuadratureSpec& s) {
    s = QuadratureSpec{};
    if (j.contains("scheme")) {
        const std::string sch = j.at("scheme").get<std::string>();
        if (sch == "radial_gauss")
            s.scheme = QuadratureSpec::Scheme::RadialGauss;
        else if (sch == "monte_carlo")
            s.scheme = QuadratureSpec::Scheme::MonteCarlo;
        else
            throw std::invalid_argument("unknown quadrature scheme: " + sch);
    }
    if (j.contains("panels_per_decade")) j.at("panels_per_decade").get_to(s.panels_per_decade);
    if (j.contains("nodes_per_panel")) j.at("nodes_per_panel").get_to(s.nodes_per_panel);
    if (j.contains("mc_samples")) j.at("mc_samples").get_to(s.mc_samples);
    if (j.contains("seed")) j.at("seed").get_to(s.seed);
    if (j.contains("rmax")) j.at("rmax").get_to(s.rmax);
}

inline void to_json(json& j, const GrowthSeries& s) {
    j = json{{"slope", s.slope},
             {"classification", std::string(growth_class_name(s.classification))}};
    if (s.limit_estimate)
        j["limit_estimate"] = *s.limit_estimate;
    else
        j["limit_estimate"] = nullptr;
}

inline void to_json(json& j, const RegimeQuery& q) {
    j = json{{"n", q.n}, {"alpha", q.alpha}, {"q", q.q}};
}

inline void from_json(const json& j, RegimeQuery& q) {
    j.at("n").get_to(q.n);
    j.at("alpha").get_to(q.alpha);
    j.at("q").get_to(q.q);
}

inline void to_json(json& j, const RegimeDecision& d) {
    json tags = json::array();
    for (Theorem t : d.applicable) tags.push_back(std::string(theorem_name(t)));
    json notes = json::object();
    for (const auto& [t, note] : d.notes) notes[std::string(theorem_name(t))] = note;
    j = json{{"applicable", tags}, {"notes", notes}};
    if (d.critical_q)
        j["critical_q"] = *d.critical_q;
    else
        j["critical_q"] = nullptr;
    if (d.uncovered_gap) {
        j["uncovered_gap"] = true;
        j["gap_note"] = d.gap_note;
    }
}

}  // namespace liouville
