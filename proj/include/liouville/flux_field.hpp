#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

// Divergence-form operators represented by their flux components
// A_i(x, xi), plus numerical checkers for the monotonicity pairing
//   0 <= sum_i (xi1_i - xi2_i)(A_i(x,xi1) - A_i(x,xi2))
// and the alpha-monotonicity ratio bound
//   (sum_i dA_i^2)^{alpha/2} <= K * pairing^{alpha-1}.

namespace liouville {

struct FluxField {
    enum class Kind { Generic, PLaplacian, ModifiedPLaplacian, WeightedPLaplacian };

    Kind kind = Kind::Generic;
    int dim = 0;
    double alpha = 2.0;  // claimed monotonicity order
    double p = 2.0;      // exponent of the built-in families
    std::string name;

    // A(x, xi) -> out (out.size() == dim)
    std::function<void(std::span<const double> x, std::span<const double> xi,
                       std::span<double> out)>
        flux;

    // weight a(x) for the weighted family; null otherwise
    std::function<double(std::span<const double> x)> weight;
    double weight_bound = 1.0;
    // a(|x|) when the weight is radial; enables the 1-D weak-form reduction
    std::function<double(double r)> radial_weight;
};

// |grad w|^{p-2} grad w, 1 < p <= 2 (flux(x, 0) = 0). Throws on bad p or n.
FluxField make_p_laplacian(int n, double p);
// coordinate-wise |w_{x_i}|^{p-2} w_{x_i}; defined for n >= 2 only.
FluxField make_modified_p_laplacian(int n, double p);
// a(x) |grad w|^{p-2} grad w with a measurable, non-negative, bounded.
FluxField make_weighted_p_laplacian(
    int n, double p, std::function<double(std::span<const double>)> a,
    double bound = 1.0, std::function<double(double)> radial_a = {});

struct SamplePlan {
    std::uint64_t seed = 0;
    std::size_t count = 100000;  // seeded random triples
    double box = 2.0;            // xi components drawn from [-box, box]
    double tolerance = 1e-12;    // absolute tolerance on the pairing sign
    bool stratified = true;      // add the deterministic grid + near-diagonal strata
};

// near-diagonal offsets; the ratio bound is extremal as xi1 -> xi2
inline constexpr std::array<double, 3> kNearDiagonalEps = {1e-1, 1e-3, 1e-6};

struct Violation {
    std::string reason;
    double value = 0.0;
    std::vector<double> x, xi1, xi2;
};

struct MonotonicityReport {
    std::size_t samples_checked = 0;
    double min_pairing = std::numeric_limits<double>::infinity();
    double k_hat = 0.0;  // max observed (sum dA^2)^{a/2} / pairing^{a-1}
    double tolerance = 1e-12;
    bool pass = false;
    std::size_t violation_count = 0;
    std::vector<Violation> violations;  // first kMaxStoredViolations witnesses
    // max ratio per stratum: [bulk, eps=1e-1, eps=1e-3, eps=1e-6]
    std::array<double, 4> stratum_max_ratio{0.0, 0.0, 0.0, 0.0};
    // set when the near-diagonal ratio grows by >10x from eps=1e-1 to 1e-6,
    // i.e. the claimed alpha does not match the flux
    bool ratio_blowup = false;

    static constexpr std::size_t kMaxStoredViolations = 16;
};

MonotonicityReport check_monotonicity(const FluxField& field, const SamplePlan& plan);
MonotonicityReport check_alpha_monotonicity(const FluxField& field, double alpha,
                                            const SamplePlan& plan);

}  // namespace liouville
