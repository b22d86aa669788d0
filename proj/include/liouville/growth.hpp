#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liouville/quadrature.hpp"
#include "liouville/radial.hpp"

// The growth functionals whose boundedness governs existence of ordered
// solution pairs:
//   T4 family: R^{-n + a(q-nu)/(q-a+1)} int_{|x|<R} (u-v)^{q-nu} dx
//   T7 family: R^{a-n} int_{{|x|<R} and {u != v}}
//                (|u|^{q-1}u - |v|^{q-1}v)(u-v)^{1-a} dx
// plus a limsup surrogate that classifies the series over a log R grid.

namespace liouville {

enum class GrowthKind { T4, T7 };

struct GrowthFunctionalSpec {
    GrowthKind kind = GrowthKind::T4;
    int n = 3;
    double alpha = 2.0;
    double q = 4.0;
    double nu = 1.0;  // T4 only; admissible range (0, alpha-1]
};

// empty if the spec is admissible for the pair
std::optional<std::string> growth_spec_error(const GrowthFunctionalSpec& spec);

// the {u != v} set is realized by this floor on |u - v|
inline constexpr double kGapFloor = 1e-30;

double growth_T4(const SolutionPair& pair, const GrowthFunctionalSpec& spec, double R,
                 const QuadratureSpec& quad = {});
double growth_T7(const SolutionPair& pair, const GrowthFunctionalSpec& spec, double R,
                 const QuadratureSpec& quad = {});
// reduced forms: nu = alpha-1 collapses T4 to R^{a-n} int (u-v)^{q-a+1},
// q = 1 collapses T7 to R^{a-n} int (u-v)^{2-a}
double remark1_growth(const SolutionPair& pair, const GrowthFunctionalSpec& spec,
                      double R, const QuadratureSpec& quad = {});
double remark2_growth(const SolutionPair& pair, const GrowthFunctionalSpec& spec,
                      double R, const QuadratureSpec& quad = {});

enum class GrowthClass { Diverges, PositiveConstant, TendsToZero, Indeterminate };
std::string_view growth_class_name(GrowthClass c);

struct GrowthPoint {
    double R = 0.0;
    double F = 0.0;
};

struct GrowthSeries {
    std::vector<GrowthPoint> points;
    double slope = 0.0;  // d log F / d log R fitted over the last two decades
    GrowthClass classification = GrowthClass::Indeterminate;
    std::optional<double> limit_estimate;  // last-decade mean, positive-constant only
};

// Needs >= 2 decades of R at >= 8 points per decade; classifies by the
// fitted slope (diverges > +0.1, tends to zero < -0.1, constant when
// |slope| <= 0.05 and the last-decade spread is <= 5%).
GrowthSeries limsup_estimate(std::vector<GrowthPoint> points);

struct RGrid {
    double rmin = 1e2;
    double rmax = 1e5;
    int points_per_decade = 8;
    std::vector<double> points() const;
};

GrowthSeries growth_scan(const SolutionPair& pair, const GrowthFunctionalSpec& spec,
                         const RGrid& grid = {}, const QuadratureSpec& quad = {});

}  // namespace liouville
