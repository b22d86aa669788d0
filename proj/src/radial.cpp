#include "liouville/radial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace liouville {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

void RadialProfile::eval_batch(std::span<const double> r, std::span<double> val,
                               std::span<double> dval) const {
    if (power_sum) {
        kern::power_profile(power_sum->k, power_sum->terms.data(),
                            int(power_sum->terms.size()), r.data(), r.size(),
                            val.empty() ? nullptr : val.data(),
                            dval.empty() ? nullptr : dval.data());
        return;
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!val.empty()) val[i] = value(r[i]);
        if (!dval.empty()) dval[i] = deriv(r[i]);
    }
}

RadialProfile make_power_sum_profile(double k, std::vector<kern::PowerTerm> terms,
                                     std::string description) {
    require(k > 1.0, "power-sum profile requires k > 1");
    RadialProfile p;
    p.description = std::move(description);
    p.power_sum = RadialProfile::PowerSum{k, terms};

    auto pw = [](double t, double e) {
        if (!(t > 0.0)) return 0.0;
        if (e == 0.0) return 1.0;
        return std::pow(t, e);
    };
    p.value = [k, terms, pw](double r) {
        const double b = 1.0 + pw(r, k);
        double v = 0.0;
        for (const auto& t : terms) v += t.coef * pw(b, t.expo);
        return v;
    };
    p.deriv = [k, terms, pw](double r) {
        const double b = 1.0 + pw(r, k);
        const double rkm1 = pw(r, k - 1.0);
        double v = 0.0;
        for (const auto& t : terms) v += t.coef * t.expo * pw(b, t.expo - 1.0) * k * rkm1;
        return v;
    };
    p.deriv2 = [k, terms, pw](double r) {
        const double b = 1.0 + pw(r, k);
        const double r2km2 = pw(r, 2.0 * k - 2.0);
        const double rkm2 = k == 2.0 ? 1.0 : pw(r, k - 2.0);
        double v = 0.0;
        for (const auto& t : terms) {
            const double e = t.expo;
            v += t.coef * e * k *
                 ((e - 1.0) * pw(b, e - 2.0) * k * r2km2 +
                  (k - 1.0) * pw(b, e - 1.0) * rkm2);
        }
        return v;
    };
    return p;
}

RadialProfile make_zero_profile() {
    RadialProfile p;
    p.description = "0";
    p.power_sum = RadialProfile::PowerSum{2.0, {}};
    p.value = [](double) { return 0.0; };
    p.deriv = [](double) { return 0.0; };
    p.deriv2 = [](double) { return 0.0; };
    return p;
}

RadialProfile make_constant_profile(double value) {
    RadialProfile p;
    p.description = fmt(value);
    p.power_sum = RadialProfile::PowerSum{2.0, {{value, 0.0}}};
    p.value = [value](double) { return value; };
    p.deriv = [](double) { return 0.0; };
    p.deriv2 = [](double) { return 0.0; };
    return p;
}

RadialProfile make_monomial_profile(double coef, double expo) {
    RadialProfile p;
    p.description = fmt(coef) + " * r^" + fmt(expo);
    p.value = [coef, expo](double r) { return r > 0.0 ? coef * std::pow(r, expo) : (expo == 0.0 ? coef : 0.0); };
    p.deriv = [coef, expo](double r) {
        return r > 0.0 ? coef * expo * std::pow(r, expo - 1.0) : 0.0;
    };
    p.deriv2 = [coef, expo](double r) {
        return r > 0.0 ? coef * expo * (expo - 1.0) * std::pow(r, expo - 2.0) : 0.0;
    };
    return p;
}

std::string_view family_name(ExampleFamily f) {
    return f == ExampleFamily::Example1 ? "example1" : "example23";
}

std::optional<std::string> example_params_error(const ExampleParams& p) {
    if (p.n < 2) return "family requires n >= 2";
    if (!(p.alpha > 1.0 && p.alpha <= 2.0)) return "family requires 1 < alpha <= 2";
    if (!(double(p.n) > p.alpha)) return "family requires n > alpha";
    if (!(p.c > 0.0)) return "family requires c > 0";
    const double qc = double(p.n) * (p.alpha - 1.0) / (double(p.n) - p.alpha);
    if (p.family == ExampleFamily::Example1) {
        if (!(p.q > 0.0)) return "family example1 requires q > 0";
        if (!(p.q > qc))
            return "family example1 requires q > n(alpha-1)/(n-alpha) = " + fmt(qc) +
                   " (critical exponent); got q = " + fmt(p.q);
        return std::nullopt;
    }
    if (!(p.q > 0.0 && p.q < p.alpha - 1.0))
        return "family example23 requires alpha - 1 > q > 0";
    if (!p.mu) return "family example23 requires mu";
    const double mu_hi = (double(p.n) - p.alpha) / double(p.n);
    if (!(*p.mu > 0.0 && *p.mu < mu_hi))
        return "family example23 requires 0 < mu < (n-alpha)/n = " + fmt(mu_hi);
    const double lam_min = (p.alpha - 1.0) / (p.alpha - 1.0 - p.q);
    const double lam = p.lambda.value_or(lam_min);
    if (!(lam >= lam_min))
        return "family example23 requires lambda >= (alpha-1)/(alpha-1-q) = " + fmt(lam_min);
    return std::nullopt;
}

SolutionPair build_example1(const ExampleParams& params) {
    require(params.family == ExampleFamily::Example1, "build_example1 wants family example1");
    if (auto err = example_params_error(params)) throw std::invalid_argument(*err);
    const double a = params.alpha;
    const double k = a / (a - 1.0);
    const double beta = (1.0 - a) / (params.q - a + 1.0);
    SolutionPair pair;
    pair.n = params.n;
    pair.alpha = a;
    pair.q = params.q;
    pair.u = make_power_sum_profile(
        k, {{params.c, beta}},
        fmt(params.c) + " * (1 + r^" + fmt(k) + ")^" + fmt(beta));
    pair.v = make_zero_profile();
    pair.gap = pair.u;
    pair.description = std::string(params.q >= 1.0 ? "example1" : "example4(q<=1)") +
                       "(n=" + std::to_string(params.n) + ",alpha=" + fmt(a) +
                       ",q=" + fmt(params.q) + ",c=" + fmt(params.c) + ")";
    return pair;
}

SolutionPair build_example23(const ExampleParams& params) {
    require(params.family == ExampleFamily::Example23,
            "build_example23 wants family example23");
    if (auto err = example_params_error(params)) throw std::invalid_argument(*err);
    const double a = params.alpha;
    const double k = a / (a - 1.0);
    const double mu = *params.mu;
    const double lam_min = (a - 1.0) / (a - 1.0 - params.q);
    const double lam = params.lambda.value_or(lam_min);
    SolutionPair pair;
    pair.n = params.n;
    pair.alpha = a;
    pair.q = params.q;
    pair.u = make_power_sum_profile(
        k, {{params.c, lam}, {1.0, -mu}},
        fmt(params.c) + " * (1 + r^" + fmt(k) + ")^" + fmt(lam) + " + (1 + r^" +
            fmt(k) + ")^-" + fmt(mu));
    pair.v = make_power_sum_profile(
        k, {{params.c, lam}},
        fmt(params.c) + " * (1 + r^" + fmt(k) + ")^" + fmt(lam));
    pair.gap = make_power_sum_profile(k, {{1.0, -mu}},
                                      "(1 + r^" + fmt(k) + ")^-" + fmt(mu));
    pair.description = std::string(lam > lam_min ? "example3" : "example2") +
                       "(n=" + std::to_string(params.n) + ",alpha=" + fmt(a) +
                       ",q=" + fmt(params.q) + ",c=" + fmt(params.c) +
                       ",mu=" + fmt(mu) + ",lambda=" + fmt(lam) + ")";
    return pair;
}

SolutionPair build_example_pair(const ExampleParams& params) {
    return params.family == ExampleFamily::Example1 ? build_example1(params)
                                                    : build_example23(params);
}

SolutionPair make_constant_gap_pair(int n, double alpha, double q, double gap_value) {
    require(gap_value >= 0.0, "constant gap must be >= 0");
    SolutionPair pair;
    pair.n = n;
    pair.alpha = alpha;
    pair.q = q;
    pair.u = make_constant_profile(gap_value);
    pair.v = make_zero_profile();
    pair.gap = pair.u;
    pair.description = "constant_gap(" + fmt(gap_value) + ")";
    return pair;
}

double signed_power(double t, double q) {
    if (t == 0.0) return 0.0;
    if (q == 1.0) return t;
    return std::copysign(std::pow(std::fabs(t), q), t);
}

double radial_p_laplacian(const RadialProfile& profile, double p, int n, double r) {
    require(r > 0.0, "radial p-laplacian is evaluated at r > 0 only");
    require(n >= 1, "dimension must be >= 1");
    if (!profile.deriv2) return radial_p_laplacian_fd(profile, p, n, r);
    const double u1 = profile.deriv(r);
    const double u2 = profile.deriv2(r);
    const double m = std::fabs(u1);
    if (m == 0.0) return p == 2.0 ? u2 : 0.0;
    return std::pow(m, p - 2.0) * ((p - 1.0) * u2 + double(n - 1) * u1 / r);
}

double radial_p_laplacian_fd(const RadialProfile& profile, double p, int n, double r) {
    require(r > 0.0, "radial p-laplacian is evaluated at r > 0 only");
    require(bool(profile.deriv), "finite-difference path needs the first derivative");
    auto flux = [&](double rho) { return signed_power(profile.deriv(rho), p - 1.0); };
    const double h = std::max(1e-6, 1e-6 * r);
    auto central = [&](double hh) { return (flux(r + hh) - flux(r - hh)) / (2.0 * hh); };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    const double dflux = (4.0 * d2 - d1) / 3.0;  // one Richardson level
    return double(n - 1) / r * flux(r) + dflux;
}

std::vector<double> RadialGrid::points() const {
    std::vector<double> pts;
    const double decades = std::log10(rmax / rmin);
    const int npts = int(std::ceil(decades * points_per_decade)) + 1;
    pts.reserve(npts);
    for (int i = 0; i < npts; ++i) {
        const double f = double(i) / double(npts - 1);
        pts.push_back(rmin * std::pow(rmax / rmin, f));
    }
    return pts;
}

std::optional<double> derive_suitable_c(const ExampleParams& params,
                                        const RadialGrid& grid) {
    require(params.family == ExampleFamily::Example1,
            "derive_suitable_c applies to family example1");
    // Only the closed form needs to be well-defined here; sub-critical q is
    // a legitimate query whose answer is "no admissible c".
    require(params.n >= 1, "derive_suitable_c requires n >= 1");
    require(params.alpha > 1.0 && params.alpha <= 2.0,
            "derive_suitable_c requires 1 < alpha <= 2");
    require(params.q > params.alpha - 1.0,
            "derive_suitable_c requires q > alpha - 1 (profile exponent undefined)");

    const auto pts = grid.points();
    const double p = params.alpha;  // operator is the radial p-Laplacian with p = alpha
    const double k = p / (p - 1.0);
    const double beta = (1.0 - p) / (params.q - p + 1.0);

    auto admissible = [&](double c) {
        const RadialProfile u = make_power_sum_profile(k, {{c, beta}}, "");
        for (double r : pts) {
            const double lap = radial_p_laplacian(u, p, params.n, r);
            const double zo = signed_power(u.value(r), params.q);
            const double slack = 1e-12 * (std::fabs(lap) + std::fabs(zo));
            if (!(lap + zo <= slack)) return false;
        }
        return true;
    };

    double lo = 1e-8, hi = 1e3;
    if (!admissible(lo)) return std::nullopt;
    if (admissible(hi)) return hi;
    while (hi - lo > 1e-4 * lo) {
        const double mid = std::sqrt(lo * hi);
        (admissible(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::optional<double> derive_suitable_c_example23(const ExampleParams& params,
                                                  const RadialGrid& grid) {
    require(params.family == ExampleFamily::Example23,
            "derive_suitable_c_example23 applies to family example23");
    {
        ExampleParams probe = params;
        probe.c = 1.0;
        if (auto err = example_params_error(probe)) throw std::invalid_argument(*err);
    }
    const auto pts = grid.points();
    const double p = params.alpha;
    const double m = p - 1.0;

    auto admissible = [&](double c) {
        ExampleParams pc = params;
        pc.c = c;
        const SolutionPair pair = build_example23(pc);
        auto flux = [&](double r) { return flux_magnitude_diff(pair, m, r); };
        for (double r : pts) {
            const double h = std::max(1e-6, 1e-6 * r);
            const double d1 = (flux(r + h) - flux(r - h)) / (2.0 * h);
            const double d2 = (flux(r + 0.5 * h) - flux(r - 0.5 * h)) / h;
            const double dflux = (4.0 * d2 - d1) / 3.0;
            const double fr = flux(r);
            const double zo = sigma_diff(pair, params.q, r);
            const double res = double(params.n - 1) / r * fr + dflux + zo;
            const double slack =
                1e-11 * (std::fabs(fr / r) + std::fabs(dflux) + std::fabs(zo));
            if (!(res <= slack)) return false;
        }
        return true;
    };

    double lo = 1e-3, hi = 1e6;
    if (!admissible(hi)) return std::nullopt;
    if (admissible(lo)) return lo;
    while (hi - lo > 1e-4 * hi) {
        const double mid = std::sqrt(lo * hi);
        (admissible(mid) ? hi : lo) = mid;
    }
    return hi;
}

double gap_value(const SolutionPair& pair, double r) {
    if (pair.gap) return pair.gap->value(r);
    return pair.u.value(r) - pair.v.value(r);
}

double sigma_diff(const SolutionPair& pair, double q, double r) {
    const double v = pair.v.value(r);
    if (pair.gap) {
        const double g = pair.gap->value(r);
        if (v == 0.0) return signed_power(g, q);
        if (v > 0.0 && g > -v) {
            // sigma(v + g) - sigma(v) = v^q expm1(q log1p(g / v)) for v > 0
            return std::pow(v, q) * std::expm1(q * std::log1p(g / v));
        }
    }
    return signed_power(pair.u.value(r), q) - signed_power(v, q);
}

double flux_magnitude_diff(const SolutionPair& pair, double m, double r) {
    const double dv = pair.v.deriv(r);
    if (m == 1.0) {
        if (pair.gap) return pair.gap->deriv(r);
        return pair.u.deriv(r) - dv;
    }
    if (pair.gap) {
        const double dg = pair.gap->deriv(r);
        if (dv == 0.0) return signed_power(dg, m);
        if (dv > 0.0 && dg > -dv)
            return std::pow(dv, m) * std::expm1(m * std::log1p(dg / dv));
        if (dv < 0.0 && dg < -dv) {
            // both derivatives negative: factor the sign out
            return -(std::pow(-dv, m) * std::expm1(m * std::log1p(dg / dv)));
        }
    }
    return signed_power(pair.u.deriv(r), m) - signed_power(dv, m);
}

}  // namespace liouville
