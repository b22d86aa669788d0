#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liouville/kernels.hpp"

// Closed-form radial solution families, radial calculus (the radial
// p-Laplacian r^{1-n} (r^{n-1} |u'|^{p-2} u')'), and the numerical
// derivation of the largest admissible amplitude c.

namespace liouville {

struct RadialProfile {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::function<double(double)> deriv2;  // set when an exact closed form exists
    std::string description;

    // structured form sum_t coef * (1 + r^k)^expo, enables batch evaluation
    struct PowerSum {
        double k = 2.0;
        std::vector<kern::PowerTerm> terms;
    };
    std::optional<PowerSum> power_sum;

    double operator()(double r) const { return value(r); }
    bool has_exact_second_derivative() const { return bool(deriv2); }

    // value/deriv over a node batch; uses the kernel lane when structured
    void eval_batch(std::span<const double> r, std::span<double> val,
                    std::span<double> dval) const;
};

RadialProfile make_power_sum_profile(double k, std::vector<kern::PowerTerm> terms,
                                     std::string description);
RadialProfile make_zero_profile();
RadialProfile make_constant_profile(double value);
// coef * r^expo with exact derivatives (test helper and calculus oracle)
RadialProfile make_monomial_profile(double coef, double expo);

enum class ExampleFamily { Example1, Example23 };

std::string_view family_name(ExampleFamily f);

struct ExampleParams {
    ExampleFamily family = ExampleFamily::Example1;
    int n = 3;
    double alpha = 2.0;
    double q = 4.0;
    double c = 1.0;
    std::optional<double> mu;
    std::optional<double> lambda;
};

// empty when the parameters satisfy the family's hypotheses; otherwise a
// message naming the violated hypothesis
std::optional<std::string> example_params_error(const ExampleParams& params);

struct SolutionPair {
    RadialProfile u, v;
    // u - v in closed form; keeps large-radius differences exact where the
    // direct subtraction would cancel catastrophically
    std::optional<RadialProfile> gap;
    int n = 3;
    double alpha = 2.0;
    double q = 1.0;
    std::string description;
};

// u = c (1 + r^{a/(a-1)})^{(1-a)/(q-a+1)}, v = 0. Accepts any q > critical
// exponent (q >= 1 and q <= 1 instances are both valid regimes).
SolutionPair build_example1(const ExampleParams& params);
// u = c (1 + r^{a/(a-1)})^lambda + (1 + r^{a/(a-1)})^{-mu}, v = first term.
SolutionPair build_example23(const ExampleParams& params);
SolutionPair build_example_pair(const ExampleParams& params);
// u = v + gap_value with v = 0 (the constant-gap pair of the nonexistence checks)
SolutionPair make_constant_gap_pair(int n, double alpha, double q, double gap_value);

// r^{1-n} d/dr ( r^{n-1} |u'|^{p-2} u' ); exact when deriv2 is registered,
// otherwise central differences with one Richardson level. r > 0 required.
double radial_p_laplacian(const RadialProfile& profile, double p, int n, double r);
double radial_p_laplacian_fd(const RadialProfile& profile, double p, int n, double r);

struct RadialGrid {
    double rmin = 1e-3;
    double rmax = 1e6;
    int points_per_decade = 64;
    std::vector<double> points() const;
};

// Largest c such that the strong-form residual D_alpha(u_c) + u_c^q stays
// <= 0 at every grid radius (bisection, relative tolerance 1e-4). Empty when
// no c > 1e-8 works, the nonexistence regimes.
std::optional<double> derive_suitable_c(const ExampleParams& params,
                                        const RadialGrid& grid = {});

// Family example23 counterpart: the smallest c whose pair satisfies the
// pure p-Laplacian (p = alpha) strong-form pair residual
//   r^{1-n} (r^{n-1} (F_u - F_v))' + sigma(u) - sigma(v) <= 0
// at every grid radius. The zero-order difference shrinks as c grows, so
// admissibility is upward closed. Empty when even c = 1e6 fails.
std::optional<double> derive_suitable_c_example23(const ExampleParams& params,
                                                  const RadialGrid& grid = {});

// |t|^{q-1} t
double signed_power(double t, double q);
// u(r) - v(r) through the gap profile when available
double gap_value(const SolutionPair& pair, double r);
// sigma(u(r)) - sigma(v(r)) with sigma(t) = |t|^{q-1} t, evaluated stably
double sigma_diff(const SolutionPair& pair, double q, double r);
// signed_power(u'(r), m) - signed_power(v'(r), m), evaluated stably
double flux_magnitude_diff(const SolutionPair& pair, double m, double r);

}  // namespace liouville
