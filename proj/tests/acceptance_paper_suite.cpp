// Acceptance suite: one line per criterion, independent oracles throughout.
// Criterion 8 executes the installed CLI twice and byte-compares the bundles.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "liouville/growth.hpp"
#include "liouville/regimes.hpp"
#include "liouville/weak_form.hpp"

using namespace liouville;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

#define ACC_CHECK(cond, ...)                                   \
    do {                                                       \
        if (!(cond)) {                                         \
            char buf_[512];                                    \
            std::snprintf(buf_, sizeof buf_, __VA_ARGS__);     \
            g_notes.push_back(buf_);                           \
            ++g_failures;                                      \
        }                                                      \
    } while (0)

void report(int id, const char* name) {
    std::printf("[%s] criterion %d: %s\n", g_failures == 0 ? "PASS" : "FAIL", id, name);
    for (const auto& n : g_notes) std::printf("         %s\n", n.c_str());
    g_notes.clear();
}

ExampleParams mk(ExampleFamily fam, int n, double alpha, double q, double c,
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

FluxField weighted_field(int n, double p) {
    return make_weighted_p_laplacian(
        n, p,
        [](std::span<const double> x) {
            double s = 0.0;
            for (double c : x) s += c * c;
            return 1.0 / (1.0 + s);
        },
        1.0, [](double r) { return 1.0 / (1.0 + r * r); });
}

// criterion-3 oracle: for w = (1+r^2)^{-1/3} in n = 3 the ratio
// -Laplacian(w)/w^4 reduces to (2 + 2t/9)/(1+t), t = r^2; the admissible
// amplitude is the grid infimum to the power 1/(q-1) = 1/3
double amplitude_oracle(const RadialGrid& grid) {
    double inf = 1e300;
    for (double r : grid.points()) {
        const double t = r * r;
        inf = std::min(inf, (2.0 + 2.0 * t / 9.0) / (1.0 + t));
    }
    return std::cbrt(inf);
}

// criterion-7 oracle: phi mass from its own eta formula and composite Simpson
double phi_mass_oracle(double R) {
    auto eta = [](double t) {
        if (t <= 1.0) return 1.0;
        if (t >= 2.0) return 0.0;
        return 1.0 / (1.0 + std::exp(1.0 / (2.0 - t) - 1.0 / (t - 1.0)));
    };
    const int m = 8192;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
        const double a = 1.0 + double(i) / m, b = a + 1.0 / m, mid = 0.5 * (a + b);
        s += (b - a) / 6.0 *
             (eta(a) * a * a + 4.0 * eta(mid) * mid * mid + eta(b) * b * b);
    }
    return unit_sphere_area(3) * (std::pow(R, 3.0) / 3.0 + std::pow(R, 3.0) * s);
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        out[fs::relative(entry.path(), dir).string()] = ss.str();
    }
    return out;
}

void criterion1() {
    SamplePlan plan;
    plan.seed = 0;
    plan.count = 100000;
    for (double p : {1.2, 1.5, 2.0}) {
        for (int n : {1, 2, 3}) {
            std::vector<std::pair<std::string, FluxField>> fields;
            fields.emplace_back("p_laplacian", make_p_laplacian(n, p));
            if (n >= 2)  // the coordinate-wise family is defined for n >= 2 only
                fields.emplace_back("modified_p_laplacian",
                                    make_modified_p_laplacian(n, p));
            fields.emplace_back("weighted_p_laplacian", weighted_field(n, p));
            for (const auto& [name, field] : fields) {
                const auto mono = check_monotonicity(field, plan);
                ACC_CHECK(mono.pass && mono.min_pairing >= -1e-12,
                          "%s p=%g n=%d: monotonicity failed (min_pairing %.3e)",
                          name.c_str(), p, n, mono.min_pairing);
                const auto amono = check_alpha_monotonicity(field, p, plan);
                ACC_CHECK(amono.pass, "%s p=%g n=%d: alpha-monotonicity failed",
                          name.c_str(), p, n);
                if (p == 2.0)
                    ACC_CHECK(std::fabs(amono.k_hat - 1.0) <= 1e-9,
                              "%s n=%d: k_hat %.12f != 1 at p=2", name.c_str(), n,
                              amono.k_hat);
            }
        }
    }
    report(1, "operator checks: p in {1.2,1.5,2.0}, n in {1,2,3}, all three families "
              "(modified for n >= 2), 1e5 seeded samples + near-diagonal grid");
}

void criterion2() {
    SamplePlan plan;
    plan.seed = 0;
    plan.count = 100000;
    const auto rep = check_alpha_monotonicity(make_p_laplacian(2, 1.5), 2.0, plan);
    ACC_CHECK(rep.stratum_max_ratio[3] > 1e3,
              "near-diagonal (eps=1e-6) max ratio %.3f not above 1e3",
              rep.stratum_max_ratio[3]);
    ACC_CHECK(rep.ratio_blowup && !rep.pass, "blow-up was not flagged as a violation");
    report(2, "mismatch detection: alpha = 2.0 on the p = 1.5 flux exceeds 1e3 on "
              "the eps = 1e-6 near-diagonal grid");
}

void criterion3() {
    RadialGrid grid;
    const auto c = derive_suitable_c(mk(ExampleFamily::Example1, 3, 2.0, 4.0, 1.0), grid);
    ACC_CHECK(c.has_value(), "no amplitude derived");
    if (c) {
        const double oracle = amplitude_oracle(grid);
        ACC_CHECK(std::fabs(*c - oracle) <= 1e-3,
                  "derived c %.6f vs grid-minimization oracle %.6f", *c, oracle);
        ACC_CHECK(std::fabs(*c - std::cbrt(2.0 / 9.0)) <= 1e-3,
                  "derived c %.6f vs (2/9)^(1/3)", *c);
        const auto pair = build_example1(mk(ExampleFamily::Example1, 3, 2.0, 4.0, *c));
        const double Rs[] = {1.0, 10.0, 100.0};
        for (const auto& [name, field] :
             {std::pair<std::string, FluxField>{"p_laplacian", make_p_laplacian(3, 2.0)},
              std::pair<std::string, FluxField>{"modified_p_laplacian",
                                                make_modified_p_laplacian(3, 2.0)}}) {
            for (const auto& rep : weak_residual_family(field, 4.0, pair, Rs))
                ACC_CHECK(rep.pass && rep.residual >= -1e-6 * rep.scale,
                          "%s R=%g: weak residual %.3e fails (scale %.3e)",
                          name.c_str(), rep.R, rep.residual, rep.scale);
            const auto rep10 = weak_residual(field, 4.0, pair, make_cutoff(10.0));
            const auto mc =
                mc_oracle_residual(field, 4.0, pair, make_cutoff(10.0), 1000000, 0);
            ACC_CHECK(std::fabs(mc.value - rep10.residual) <=
                          std::max(0.01 * rep10.scale, 3.0 * mc.std_error),
                      "%s: MC %.6f +- %.6f vs radial %.6f beyond tolerance",
                      name.c_str(), mc.value, mc.std_error, rep10.residual);
        }
    }
    report(3, "example1 end-to-end (n=3, alpha=2, q=4): amplitude vs oracle, weak "
              "residual for R in {1,10,100} under both operators, MC agreement");
}

void criterion4() {
    const auto ex1pair = build_example1(mk(ExampleFamily::Example1, 3, 2.0, 4.0, 1.0));
    for (double nu : {0.5, 1.0}) {
        GrowthFunctionalSpec spec{GrowthKind::T4, 3, 2.0, 4.0, nu};
        const auto series = growth_scan(ex1pair, spec);
        ACC_CHECK(series.classification == GrowthClass::PositiveConstant &&
                      std::fabs(series.slope) <= 0.05,
                  "example1 nu=%g: %s slope %.4f", nu,
                  std::string(growth_class_name(series.classification)).c_str(),
                  series.slope);
        // closed-form limit: c^{q-nu} omega_n / (n - alpha(q-nu)/(q-alpha+1))
        const double s = 2.0 * (4.0 - nu) / 3.0;
        const double expect = unit_sphere_area(3) / (3.0 - s);
        if (series.limit_estimate)
            ACC_CHECK(std::fabs(*series.limit_estimate - expect) <= 0.015 * expect,
                      "example1 nu=%g: limit %.5f vs closed form %.5f", nu,
                      *series.limit_estimate, expect);
    }
    {
        GrowthFunctionalSpec spec{GrowthKind::T7, 3, 2.0, 0.5, 0.0};
        const auto ex2 = build_example23(
            mk(ExampleFamily::Example23, 3, 2.0, 0.5, 1.0, 0.1, 2.0));
        const auto series = growth_scan(ex2, spec);
        ACC_CHECK(series.classification == GrowthClass::PositiveConstant,
                  "example2: %s",
                  std::string(growth_class_name(series.classification)).c_str());
        if (series.limit_estimate)
            ACC_CHECK(std::fabs(*series.limit_estimate - 2.0 * M_PI) <= 0.015 * 2.0 * M_PI,
                      "example2 limit %.5f vs 2*pi", *series.limit_estimate);
        const auto ex3 = build_example23(
            mk(ExampleFamily::Example23, 3, 2.0, 0.5, 1.0, 0.1, 2.5));
        const auto s3 = growth_scan(ex3, spec);
        ACC_CHECK(s3.classification == GrowthClass::TendsToZero && s3.slope <= -0.1,
                  "example3: %s slope %.4f",
                  std::string(growth_class_name(s3.classification)).c_str(), s3.slope);
    }
    {
        GrowthFunctionalSpec spec{GrowthKind::T7, 3, 1.2, 0.5, 0.0};
        const auto ex4 = build_example1(mk(ExampleFamily::Example1, 3, 1.2, 0.5, 1.0));
        const auto series = growth_scan(ex4, spec);
        ACC_CHECK(series.classification == GrowthClass::PositiveConstant,
                  "example4 (q* = 1/3): %s",
                  std::string(growth_class_name(series.classification)).c_str());
        if (series.limit_estimate)
            ACC_CHECK(std::fabs(*series.limit_estimate - unit_sphere_area(3) / 1.8) <=
                          0.015 * unit_sphere_area(3) / 1.8,
                      "example4 limit %.5f vs omega_3/1.8", *series.limit_estimate);
    }
    {
        GrowthFunctionalSpec spec{GrowthKind::T4, 3, 2.0, 4.0, 1.0};
        const auto gap = make_constant_gap_pair(3, 2.0, 4.0, 1.0);
        const auto series = growth_scan(gap, spec);
        ACC_CHECK(series.classification == GrowthClass::Diverges && series.slope >= 0.1,
                  "constant gap: %s slope %.4f",
                  std::string(growth_class_name(series.classification)).c_str(),
                  series.slope);
    }
    report(4, "growth classifications: example1 (nu in {0.5,1}) and example2 and "
              "example4 stabilize, example3 decays, constant gap diverges");
}

void criterion5() {
    RGrid grid;
    double worst = 0.0;
    const auto ex4 = build_example1(mk(ExampleFamily::Example1, 3, 1.2, 0.5, 1.0));
    const auto ex1 = build_example1(mk(ExampleFamily::Example1, 3, 2.0, 4.0, 1.0));
    GrowthFunctionalSpec a{GrowthKind::T4, 3, 1.2, 0.5, 1.2 - 1.0};
    GrowthFunctionalSpec b{GrowthKind::T4, 3, 2.0, 4.0, 1.0};
    for (double R : grid.points()) {
        const double d1 = std::fabs(growth_T4(ex4, a, R) - remark1_growth(ex4, a, R)) /
                          std::max(remark1_growth(ex4, a, R), 1e-300);
        const double d2 = std::fabs(growth_T4(ex1, b, R) - remark1_growth(ex1, b, R)) /
                          std::max(remark1_growth(ex1, b, R), 1e-300);
        worst = std::max({worst, d1, d2});
    }
    const auto exq1 = build_example1(mk(ExampleFamily::Example1, 3, 1.2, 1.0, 1.0));
    GrowthFunctionalSpec c{GrowthKind::T7, 3, 1.2, 1.0, 0.0};
    for (double R : grid.points()) {
        const double d = std::fabs(growth_T7(exq1, c, R) - remark2_growth(exq1, c, R)) /
                         std::max(remark2_growth(exq1, c, R), 1e-300);
        worst = std::max(worst, d);
    }
    ACC_CHECK(worst <= 1e-12, "worst pointwise relative difference %.3e", worst);
    report(5, "remark reductions: T4 at nu = alpha-1 equals the reduced form, T7 at "
              "q = 1 equals the reduced form, pointwise to 1e-12 relative");
}

void criterion6() {
    struct Row {
        RegimeQuery q;
        std::vector<std::string> expect;
        bool gap;
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
    for (const auto& row : table) {
        const auto d = classify(row.q);
        std::vector<std::string> got;
        for (Theorem t : d.applicable) got.emplace_back(theorem_name(t));
        ACC_CHECK(got == row.expect && d.uncovered_gap == row.gap,
                  "(%d, %g, %.7g) classified unexpectedly", row.q.n, row.q.alpha,
                  row.q.q);
    }
    report(6, "regime classifier: 12-triple table covering every tag, both critical "
              "boundaries, the T7/T8 overlap, and the uncovered gap triple");
}

void criterion7() {
    const auto pair = make_constant_gap_pair(3, 2.0, 1.0, 1.0);
    const auto rep =
        weak_residual(make_p_laplacian(3, 2.0), 1.0, pair, make_cutoff(1.0));
    const double mass = phi_mass_oracle(1.0);
    ACC_CHECK(rep.residual < 0.0, "residual %.6f not strictly negative", rep.residual);
    ACC_CHECK(std::fabs(rep.residual + mass) <= 0.01 * mass,
              "residual %.8f vs -phi mass %.8f beyond 1%%", rep.residual, -mass);
    report(7, "nonexistence smoke test: u = v + 1 residual equals minus the phi mass "
              "within 1%");
}

void criterion8(const char* argv0) {
    std::string bin;
    if (const char* env = std::getenv("LIOUVILLE_LAB_BIN")) bin = env;
    if (bin.empty() && argv0) {
        const fs::path sibling = fs::path(argv0).parent_path() / "liouville-lab";
        if (fs::exists(sibling)) bin = sibling.string();
    }
    if (bin.empty()) {
        ACC_CHECK(false, "liouville-lab binary not found (set LIOUVILLE_LAB_BIN)");
        report(8, "determinism: two --paper-suite runs produce byte-identical bundles");
        return;
    }
    const fs::path base = fs::temp_directory_path() / "liouville_acceptance";
    const fs::path dir_a = base / "run_a", dir_b = base / "run_b";
    std::error_code ec;
    fs::remove_all(base, ec);
    auto run = [&](const fs::path& dir) {
        const std::string cmd = "\"" + bin + "\" --paper-suite --seed 0 --out \"" +
                                dir.string() + "\" > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const int rc_a = run(dir_a);
    const int rc_b = run(dir_b);
    ACC_CHECK(rc_a == 0 && rc_b == 0, "paper-suite exit codes %d / %d", rc_a, rc_b);
    if (rc_a == 0 && rc_b == 0) {
        const auto files_a = read_dir(dir_a);
        const auto files_b = read_dir(dir_b);
        ACC_CHECK(!files_a.empty(), "no report files written");
        ACC_CHECK(files_a == files_b, "report bundles differ between runs");
    }
    fs::remove_all(base, ec);
    report(8, "determinism: two --paper-suite runs produce byte-identical bundles");
}

}  // namespace

int main(int, char** argv) {
    int total_failures = 0;
    auto section = [&](auto&& fn) {
        fn();
        total_failures += g_failures;
        g_failures = 0;
    };
    section(criterion1);
    section(criterion2);
    section(criterion3);
    section(criterion4);
    section(criterion5);
    section(criterion6);
    section(criterion7);
    section([&] { criterion8(argv[0]); });
    if (total_failures == 0) {
        std::printf("acceptance: all criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d failing check(s)\n", total_failures);
    return 1;
}
