#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liouville/serialize.hpp"

using namespace liouville;
using nlohmann::json;

TEST_CASE("sample plan wire format") {
    const json j = json::parse(
        R"({"seed": 7, "count": 500, "box_bounds": 3.0, "tolerance": 1e-10})");
    const auto plan = j.get<SamplePlan>();
    CHECK(plan.seed == 7);
    CHECK(plan.count == 500);
    CHECK(plan.box == 3.0);
    CHECK(plan.tolerance == 1e-10);
    CHECK(plan.stratified);  // defaulted

    const json back = plan;
    CHECK(back.at("box_bounds") == 3.0);
    CHECK(back.at("seed") == 7);
    CHECK(back.contains("count"));
    CHECK(back.contains("tolerance"));
}

TEST_CASE("example params wire format") {
    const json j = json::parse(
        R"({"family": "example23", "n": 3, "alpha": 2.0, "q": 0.5, "mu": 0.1, "lambda": 2.0})");
    const auto p = j.get<ExampleParams>();
    CHECK(p.family == ExampleFamily::Example23);
    CHECK(p.c == 1.0);  // defaulted
    REQUIRE(p.mu.has_value());
    CHECK(*p.mu == 0.1);

    const json back = p;
    CHECK(back.at("family") == "example23");
    CHECK(back.at("lambda") == 2.0);

    CHECK_THROWS(json::parse(R"({"family": "example9", "n": 3, "alpha": 2, "q": 1})")
                     .get<ExampleParams>());
    CHECK_THROWS(json::parse(R"({"n": 3, "alpha": 2, "q": 1})").get<ExampleParams>());
}

TEST_CASE("quadrature spec wire format") {
    const json j = json::parse(
        R"({"scheme": "monte_carlo", "mc_samples": 1000, "seed": 3, "rmax": 20.0})");
    const auto s = j.get<QuadratureSpec>();
    CHECK(s.scheme == QuadratureSpec::Scheme::MonteCarlo);
    CHECK(s.mc_samples == 1000);
    CHECK(s.rmax == 20.0);
    CHECK(s.panels_per_decade == 8);  // defaulted
    CHECK_THROWS(json::parse(R"({"scheme": "simpson"})").get<QuadratureSpec>());
}

TEST_CASE("monotonicity report serializes its contract keys") {
    MonotonicityReport rep;
    rep.pass = false;
    rep.min_pairing = -1e-3;
    rep.k_hat = 1.5;
    rep.violation_count = 1;
    Violation v;
    v.reason = "pairing negative beyond tolerance";
    v.value = -1e-3;
    v.x = {0.0};
    v.xi1 = {1.0};
    v.xi2 = {2.0};
    rep.violations.push_back(v);
    const json j = rep;
    CHECK(j.at("pass") == false);
    CHECK(j.at("min_pairing") == -1e-3);
    CHECK(j.at("k_hat") == 1.5);
    CHECK(j.at("violations").size() == 1);
    CHECK(j.at("violations")[0].at("reason") == "pairing negative beyond tolerance");
}

TEST_CASE("regime decision serializes tags, critical exponent and notes") {
    const json j = classify({3, 2.0, 4.0});
    CHECK(j.at("applicable") == json::array({"T4", "T5", "T6"}));
    CHECK(j.at("critical_q") == 3.0);
    CHECK(j.at("notes").contains("T4"));
    CHECK(!j.contains("uncovered_gap"));

    const json g = classify({3, 1.5, 0.7});
    CHECK(g.at("applicable").empty());
    CHECK(g.at("uncovered_gap") == true);
}

TEST_CASE("weak report and growth summary keys") {
    WeakResidualReport rep;
    rep.R = 10.0;
    rep.residual = 0.5;
    rep.scale = 1.0;
    rep.pass = true;
    rep.status = CheckStatus::Pass;
    const json j = rep;
    for (const char* key : {"R", "residual", "error", "scale", "pass", "status"})
        CHECK(j.contains(key));

    GrowthSeries s;
    s.slope = 0.01;
    s.classification = GrowthClass::PositiveConstant;
    s.limit_estimate = 7.0;
    const json g = s;
    CHECK(g.at("classification") == "positive_constant");
    CHECK(g.at("slope") == 0.01);
    CHECK(g.at("limit_estimate") == 7.0);
    GrowthSeries none;
    const json g2 = none;
    CHECK(g2.at("limit_estimate").is_null());
}

TEST_CASE("serialization is byte-stable") {
    MonotonicityReport rep;
    rep.pass = true;
    rep.min_pairing = 1.2345678901234567e-13;
    rep.k_hat = 1.4142135623730951;
    const json a = rep;
    const json b = rep;
    CHECK(a.dump(2) == b.dump(2));
}
