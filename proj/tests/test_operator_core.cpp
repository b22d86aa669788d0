#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "liouville/flux_field.hpp"
#include "liouville/kernels.hpp"
#include "liouville/rng.hpp"

using namespace liouville;
using doctest::Approx;

namespace {

std::vector<double> flux_at(const FluxField& f, std::vector<double> x,
                            std::vector<double> xi) {
    std::vector<double> out(f.dim);
    f.flux(x, xi, out);
    return out;
}

// Independent oracle: direct libm evaluation of pairing and the ratio bound
// for the isotropic family over a dense deterministic grid of 2-D pairs.
struct GridOracle {
    double min_pairing = 1e300;
    double max_ratio = 0.0;
};

GridOracle grid_oracle_p15(int pts_per_axis) {
    const double p = 1.5, alpha = 1.5;
    GridOracle o;
    std::vector<double> axis(pts_per_axis);
    for (int i = 0; i < pts_per_axis; ++i)
        axis[i] = -2.0 + 4.0 * double(i) / double(pts_per_axis - 1);
    auto a_of = [&](double x, double y, double& ax, double& ay) {
        const double m = x * x + y * y;
        const double f = m > 0 ? std::pow(m, 0.5 * (p - 2.0)) : 0.0;
        ax = f * x;
        ay = f * y;
    };
    for (double x1 : axis)
        for (double y1 : axis)
            for (double x2 : axis)
                for (double y2 : axis) {
                    double a1x, a1y, a2x, a2y;
                    a_of(x1, y1, a1x, a1y);
                    a_of(x2, y2, a2x, a2y);
                    const double pair =
                        (x1 - x2) * (a1x - a2x) + (y1 - y2) * (a1y - a2y);
                    o.min_pairing = std::min(o.min_pairing, pair);
                    if (pair > 1e-12) {
                        const double da =
                            (a1x - a2x) * (a1x - a2x) + (a1y - a2y) * (a1y - a2y);
                        o.max_ratio = std::max(
                            o.max_ratio,
                            std::pow(da, 0.5 * alpha) / std::pow(pair, alpha - 1.0));
                    }
                }
    return o;
}

}  // namespace

TEST_CASE("p-laplacian flux values") {
    auto f = make_p_laplacian(2, 2.0);
    auto v = flux_at(f, {0, 0}, {3, 4});
    CHECK(v[0] == 3.0);
    CHECK(v[1] == 4.0);

    f = make_p_laplacian(2, 1.5);
    v = flux_at(f, {0, 0}, {3, 4});
    CHECK(v[0] == Approx(3.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK(v[1] == Approx(4.0 / std::sqrt(5.0)).epsilon(1e-14));

    f = make_p_laplacian(3, 1.5);
    v = flux_at(f, {0, 0, 0}, {0, 0, 0});
    CHECK(v == std::vector<double>{0, 0, 0});

    CHECK_THROWS_AS(make_p_laplacian(2, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(make_p_laplacian(2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_p_laplacian(0, 1.5), std::invalid_argument);
}

TEST_CASE("modified p-laplacian flux values") {
    auto f = make_modified_p_laplacian(2, 2.0);
    auto v = flux_at(f, {0, 0}, {3, 4});
    CHECK(v[0] == 3.0);
    CHECK(v[1] == 4.0);

    f = make_modified_p_laplacian(2, 1.5);
    v = flux_at(f, {0, 0}, {4, 0});
    CHECK(v[0] == Approx(2.0).epsilon(1e-14));
    CHECK(v[1] == 0.0);
    v = flux_at(f, {0, 0}, {1, -1});
    CHECK(v[0] == 1.0);
    CHECK(v[1] == -1.0);

    CHECK_THROWS_AS(make_modified_p_laplacian(1, 1.5), std::invalid_argument);
}

TEST_CASE("weighted p-laplacian flux values") {
    auto norm2 = [](std::span<const double> x) {
        double s = 0;
        for (double c : x) s += c * c;
        return s;
    };
    auto f = make_weighted_p_laplacian(
        2, 2.0, [&](std::span<const double> x) { return 1.0 / (1.0 + norm2(x)); });
    auto v = flux_at(f, {1, 0}, {2, 0});
    CHECK(v[0] == Approx(1.0).epsilon(1e-14));
    CHECK(v[1] == 0.0);

    // unit weight reduces to the plain field at sampled points
    auto unit = make_weighted_p_laplacian(2, 1.5,
                                          [](std::span<const double>) { return 1.0; });
    auto plain = make_p_laplacian(2, 1.5);
    Xoshiro256pp rng(5);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        std::vector<double> xi{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(flux_at(unit, x, xi) == flux_at(plain, x, xi));
    }

    // degenerate weight: flux vanishes, both conditions hold with k_hat = 0
    auto zero = make_weighted_p_laplacian(2, 1.5,
                                          [](std::span<const double>) { return 0.0; });
    SamplePlan plan;
    plan.count = 2000;
    auto rep = check_alpha_monotonicity(zero, 1.5, plan);
    CHECK(rep.pass);
    CHECK(rep.k_hat == 0.0);
}

TEST_CASE("check_monotonicity on the built-ins") {
    SamplePlan plan;
    plan.count = 100000;

    auto p2 = check_monotonicity(make_p_laplacian(2, 2.0), plan);
    CHECK(p2.pass);
    CHECK(p2.min_pairing >= 0.0);  // pairing is |xi1 - xi2|^2 exactly

    auto p15 = check_monotonicity(make_p_laplacian(2, 1.5), plan);
    CHECK(p15.pass);
    CHECK(p15.min_pairing >= -1e-12);
    CHECK(p15.violation_count == 0);
    CHECK(p15.samples_checked > 100000);

    // independent dense-grid oracle agrees that the pairing stays >= 0
    const GridOracle oracle = grid_oracle_p15(13);
    CHECK(oracle.min_pairing >= -1e-12);
}

TEST_CASE("equal-argument samples contribute zero pairing") {
    const int dim = 3;
    Xoshiro256pp rng(17);
    std::vector<std::vector<double>> xi(dim, std::vector<double>(64));
    for (auto& c : xi)
        for (auto& v : c) v = rng.uniform(-2, 2);
    std::vector<const double*> ptr(dim);
    for (int j = 0; j < dim; ++j) ptr[j] = xi[j].data();
    std::vector<double> pair(64), dasq(64);
    kern::plap_pair(1.5, dim, 64, ptr.data(), ptr.data(), nullptr, pair.data(),
                    dasq.data());
    for (int i = 0; i < 64; ++i) {
        CHECK(pair[i] == 0.0);
        CHECK(dasq[i] == 0.0);
    }
}

TEST_CASE("pairing is symmetric under swapping the arguments") {
    Xoshiro256pp rng(23);
    const int dim = 2;
    const std::size_t n = 512;
    std::vector<std::vector<double>> x1(dim, std::vector<double>(n)),
        x2(dim, std::vector<double>(n));
    for (int j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            x1[j][i] = rng.uniform(-2, 2);
            x2[j][i] = rng.uniform(-2, 2);
        }
    std::vector<const double*> p1{x1[0].data(), x1[1].data()},
        p2{x2[0].data(), x2[1].data()};
    std::vector<double> pa(n), da(n), pb(n), db(n);
    for (double p : {1.2, 1.5, 2.0}) {
        kern::plap_pair(p, dim, n, p1.data(), p2.data(), nullptr, pa.data(), da.data());
        kern::plap_pair(p, dim, n, p2.data(), p1.data(), nullptr, pb.data(), db.data());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(pa[i] == pb[i]);
            CHECK(da[i] == db[i]);
        }
        kern::mplap_pair(p, dim, n, p1.data(), p2.data(), pa.data(), da.data());
        kern::mplap_pair(p, dim, n, p2.data(), p1.data(), pb.data(), db.data());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(pa[i] == pb[i]);
            CHECK(da[i] == db[i]);
        }
    }
}

TEST_CASE("alpha-monotonicity: p = 2 has k_hat = 1") {
    SamplePlan plan;
    plan.count = 20000;
    for (int n : {1, 2, 3}) {
        auto rep = check_alpha_monotonicity(make_p_laplacian(n, 2.0), 2.0, plan);
        CHECK(rep.pass);
        CHECK(rep.k_hat == Approx(1.0).epsilon(1e-9));
        CHECK(!rep.ratio_blowup);
    }
}

TEST_CASE("alpha-monotonicity: equal-pair plans give k_hat = 0") {
    auto field = make_p_laplacian(2, 1.5);
    // a plan with no spread: stratified off, zero random samples
    SamplePlan plan;
    plan.count = 0;
    plan.stratified = false;
    auto rep = check_alpha_monotonicity(field, 1.5, plan);
    CHECK(rep.pass);
    CHECK(rep.k_hat == 0.0);
}

TEST_CASE("alpha-monotonicity: p = 1.5 pinned by the grid oracle") {
    // oracle stability under refinement
    const GridOracle coarse = grid_oracle_p15(13);
    const GridOracle fine = grid_oracle_p15(25);
    CHECK(std::fabs(fine.max_ratio - coarse.max_ratio) <= 0.05 * fine.max_ratio);

    SamplePlan plan;
    plan.count = 100000;
    auto rep = check_alpha_monotonicity(make_p_laplacian(2, 1.5), 1.5, plan);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.k_hat));
    CHECK(rep.k_hat == Approx(fine.max_ratio).epsilon(1e-3));
    CHECK(!rep.ratio_blowup);
    // the supremum is attained at antipodal pairs: 2^{2-p}
    CHECK(rep.k_hat == Approx(std::pow(2.0, 0.5)).epsilon(1e-6));
}

TEST_CASE("alpha-monotonicity: mismatched alpha blows up near the diagonal") {
    SamplePlan plan;
    plan.count = 20000;
    auto rep = check_alpha_monotonicity(make_p_laplacian(2, 1.5), 2.0, plan);
    CHECK(rep.ratio_blowup);
    CHECK(!rep.pass);
    CHECK(rep.stratum_max_ratio[3] > 1e3);  // eps = 1e-6 stratum
    CHECK(rep.stratum_max_ratio[3] > 10.0 * rep.stratum_max_ratio[1]);
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.reason.find("diverges") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("k_hat is a running maximum: monotone in the sample count") {
    auto field = make_p_laplacian(2, 1.2);
    SamplePlan a;
    a.count = 10000;
    SamplePlan b = a;
    b.count = 20000;
    const auto ra = check_alpha_monotonicity(field, 1.2, a);
    const auto rb = check_alpha_monotonicity(field, 1.2, b);
    CHECK(rb.k_hat >= ra.k_hat);
    CHECK(rb.samples_checked > ra.samples_checked);
}

TEST_CASE("flux(x, 0) vanishes for every built-in at 1000 sampled x") {
    Xoshiro256pp rng(29);
    std::vector<FluxField> fields;
    fields.push_back(make_p_laplacian(3, 1.5));
    fields.push_back(make_modified_p_laplacian(3, 1.2));
    fields.push_back(make_weighted_p_laplacian(3, 1.5, [](std::span<const double> x) {
        double s = 0;
        for (double c : x) s += c * c;
        return 1.0 / (1.0 + s);
    }));
    for (const auto& f : fields) {
        std::vector<double> x(3), zero(3, 0.0), out(3);
        for (int i = 0; i < 1000; ++i) {
            for (auto& c : x) c = rng.uniform(-5, 5);
            f.flux(x, zero, out);
            CHECK(out == std::vector<double>{0, 0, 0});
        }
    }
}

TEST_CASE("non-finite flux output is a recorded witness, not a crash") {
    FluxField f;
    f.kind = FluxField::Kind::Generic;
    f.dim = 1;
    f.alpha = 2.0;
    f.name = "pole at xi = 0.25";
    f.flux = [](std::span<const double>, std::span<const double> xi,
                std::span<double> out) {
        out[0] = xi[0] / (1.0 - 16.0 * xi[0] * xi[0]);
    };
    SamplePlan plan;
    plan.count = 100;
    auto rep = check_monotonicity(f, plan);
    CHECK(!rep.pass);
    CHECK(rep.violation_count > 0);
    bool nonfinite = false;
    for (const auto& v : rep.violations)
        if (v.reason == "non-finite flux evaluation") nonfinite = true;
    CHECK(nonfinite);
}

TEST_CASE("a decreasing generic flux fails the pairing condition") {
    FluxField f;
    f.kind = FluxField::Kind::Generic;
    f.dim = 2;
    f.alpha = 2.0;
    f.name = "negated identity";
    f.flux = [](std::span<const double>, std::span<const double> xi,
                std::span<double> out) {
        out[0] = -xi[0];
        out[1] = -xi[1];
    };
    SamplePlan plan;
    plan.count = 500;
    auto rep = check_monotonicity(f, plan);
    CHECK(!rep.pass);
    CHECK(rep.min_pairing < 0.0);
}

TEST_CASE("weight outside its bound is reported") {
    auto f = make_weighted_p_laplacian(2, 1.5,
                                       [](std::span<const double>) { return -0.1; });
    SamplePlan plan;
    plan.count = 100;
    auto rep = check_monotonicity(f, plan);
    CHECK(!rep.pass);
    bool weight_violation = false;
    for (const auto& v : rep.violations)
        if (v.reason.find("weight") != std::string::npos) weight_violation = true;
    CHECK(weight_violation);
}
