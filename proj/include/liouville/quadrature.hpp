#pragma once

#include <cstdint>
#include <functional>
#include <vector>

// Gauss-Legendre panel quadrature for radial integrals over [0, rmax].
// Panels are log-spaced (the integrands are power-like at both ends) with
// Gauss nodes only, so the r = 0 endpoint is never evaluated.

namespace liouville {

struct GaussRule {
    std::vector<double> x, w;  // nodes/weights on [-1, 1]
};
// Newton-iterated Legendre roots; cached per order, thread-safe.
const GaussRule& gauss_rule(int order);

struct RadialQuadrature {
    std::vector<double> r, w;  // sum_i w[i] f(r[i]) ~ int_0^rmax f
};
// decades controls the smallest panel ([0, rmax*10^-decades] plus log steps).
RadialQuadrature make_radial_quadrature(double rmax, int panels_per_decade,
                                        int nodes_per_panel, int decades = 8);
// Gauss panels on a linear interval [a, b] (used across cutoff transitions).
RadialQuadrature make_linear_quadrature(double a, double b, int panels,
                                        int nodes_per_panel);

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
};

// f_batch fills f(r[i]) for a node batch. The error estimate is the
// difference against a node-doubled evaluation, and the finer value wins.
QuadratureResult integrate_radial(
    const std::function<void(const std::vector<double>& r, std::vector<double>& f)>& f_batch,
    double rmax, int panels_per_decade, int nodes_per_panel, int decades = 8);

struct QuadratureSpec {
    enum class Scheme { RadialGauss, MonteCarlo };
    Scheme scheme = Scheme::RadialGauss;
    int panels_per_decade = 8;
    int nodes_per_panel = 12;
    std::size_t mc_samples = 200000;
    std::uint64_t seed = 0;
    double rmax = 0.0;  // 0 = derived from the cutoff (2R)
};

}  // namespace liouville
