#include "liouville/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "liouville/kernels.hpp"
#include "liouville/weak_form.hpp"

namespace liouville {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool is_zero_profile(const RadialProfile& p) {
    return p.power_sum && p.power_sum->terms.empty();
}

// gap values over a node batch, via the closed form when available
void gap_batch(const SolutionPair& pair, const std::vector<double>& r,
               std::vector<double>& g) {
    g.resize(r.size());
    if (pair.gap) {
        pair.gap->eval_batch(r, g, {});
        return;
    }
    std::vector<double> uv(r.size()), vv(r.size());
    pair.u.eval_batch(r, uv, {});
    pair.v.eval_batch(r, vv, {});
    for (std::size_t i = 0; i < r.size(); ++i) g[i] = uv[i] - vv[i];
}

double integrate_ball(const SolutionPair& pair, double R, const QuadratureSpec& quad,
                      const std::function<void(const std::vector<double>& r,
                                               const std::vector<double>& gap,
                                               std::vector<double>& f)>& integrand) {
    const double area = unit_sphere_area(pair.n);
    const int nm1 = pair.n - 1;
    auto fb = [&](const std::vector<double>& r, std::vector<double>& f) {
        std::vector<double> g;
        gap_batch(pair, r, g);
        integrand(r, g, f);
        for (std::size_t i = 0; i < r.size(); ++i)
            f[i] *= std::pow(r[i], double(nm1));
    };
    const QuadratureResult res = integrate_radial(fb, R, quad.panels_per_decade,
                                                  quad.nodes_per_panel, 10);
    return area * res.value;
}

}  // namespace

std::optional<std::string> growth_spec_error(const GrowthFunctionalSpec& spec) {
    if (spec.n < 1) return "growth functional requires n >= 1";
    if (!(spec.alpha > 1.0)) return "growth functional requires alpha > 1";
    if (!(spec.q > 0.0)) return "growth functional requires q > 0";
    if (spec.kind == GrowthKind::T4) {
        if (!(spec.nu > 0.0 && spec.nu <= spec.alpha - 1.0))
            return "T4 functional requires nu in (0, alpha-1]";
        if (!(spec.q - spec.nu > 0.0)) return "T4 functional requires q - nu > 0";
        if (!(spec.q - spec.alpha + 1.0 > 0.0))
            return "T4 functional requires q - alpha + 1 > 0";
    }
    return std::nullopt;
}

double growth_T4(const SolutionPair& pair, const GrowthFunctionalSpec& spec, double R,
                 const QuadratureSpec& quad) {
    require(spec.kind == GrowthKind::T4, "growth_T4 wants a T4 spec");
    if (auto err = growth_spec_error(spec)) throw std::invalid_argument(*err);
    require(R > 0.0, "radius must be positive");
    const double e = spec.q - spec.nu;
    const double integral = integrate_ball(
        pair, R, quad,
        [&](const std::vector<double>&, const std::vector<double>& g,
            std::vector<double>& f) {
            f.resize(g.size());
            kern::pow_pos(g.data(), g.size(), e, f.data());
        });
    const double expo = -double(spec.n) +
                        spec.alpha * (spec.q - spec.nu) / (spec.q - spec.alpha + 1.0);
    return std::pow(R, expo) * integral;
}

double growth_T7(const SolutionPair& pair, const GrowthFunctionalSpec& spec, double R,
                 const QuadratureSpec& quad) {
    require(spec.kind == GrowthKind::T7, "growth_T7 wants a T7 spec");
    if (auto err = growth_spec_error(spec)) throw std::invalid_argument(*err);
    require(R > 0.0, "radius must be positive");
    const bool v_is_zero = is_zero_profile(pair.v);
    const double integral = integrate_ball(
        pair, R, quad,
        [&](const std::vector<double>& r, const std::vector<double>& g,
            std::vector<double>& f) {
            f.resize(g.size());
            if (v_is_zero) {
                // sigma(u) (u)^{1-a} collapses to u^{q+1-a}; one power, no
                // cancellation
                kern::pow_pos(g.data(), g.size(), spec.q + 1.0 - spec.alpha, f.data());
                for (std::size_t i = 0; i < g.size(); ++i)
                    if (!(g[i] > kGapFloor)) f[i] = 0.0;
                return;
            }
            // (u-v)^{1-a} via exp((1-a) log(u-v)) keeps tiny gaps accurate
            kern::pow_pos(g.data(), g.size(), 1.0 - spec.alpha, f.data());
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (!(g[i] > kGapFloor)) {
                    f[i] = 0.0;
                    continue;
                }
                f[i] *= sigma_diff(pair, spec.q, r[i]);
            }
        });
    return std::pow(R, spec.alpha - double(spec.n)) * integral;
}

double remark1_growth(const SolutionPair& pair, const GrowthFunctionalSpec& spec,
                      double R, const QuadratureSpec& quad) {
    require(R > 0.0, "radius must be positive");
    const double e = spec.q - spec.alpha + 1.0;
    require(e > 0.0, "reduced T4 form requires q - alpha + 1 > 0");
    const double integral = integrate_ball(
        pair, R, quad,
        [&](const std::vector<double>&, const std::vector<double>& g,
            std::vector<double>& f) {
            f.resize(g.size());
            kern::pow_pos(g.data(), g.size(), e, f.data());
        });
    return std::pow(R, spec.alpha - double(spec.n)) * integral;
}

double remark2_growth(const SolutionPair& pair, const GrowthFunctionalSpec& spec,
                      double R, const QuadratureSpec& quad) {
    require(R > 0.0, "radius must be positive");
    const double integral = integrate_ball(
        pair, R, quad,
        [&](const std::vector<double>&, const std::vector<double>& g,
            std::vector<double>& f) {
            f.resize(g.size());
            kern::pow_pos(g.data(), g.size(), 2.0 - spec.alpha, f.data());
            for (std::size_t i = 0; i < g.size(); ++i)
                if (!(g[i] > kGapFloor)) f[i] = 0.0;
        });
    return std::pow(R, spec.alpha - double(spec.n)) * integral;
}

std::string_view growth_class_name(GrowthClass c) {
    switch (c) {
        case GrowthClass::Diverges: return "diverges";
        case GrowthClass::PositiveConstant: return "positive_constant";
        case GrowthClass::TendsToZero: return "tends_to_zero";
        case GrowthClass::Indeterminate: return "indeterminate";
    }
    return "?";
}

GrowthSeries limsup_estimate(std::vector<GrowthPoint> points) {
    GrowthSeries out;
    std::sort(points.begin(), points.end(),
              [](const GrowthPoint& a, const GrowthPoint& b) { return a.R < b.R; });
    out.points = std::move(points);
    const auto& pts = out.points;
    if (pts.size() < 2) return out;

    const double rmax = pts.back().R, rmin = pts.front().R;
    if (!(rmin > 0.0)) return out;
    const double decades = std::log10(rmax / rmin);
    const double per_decade = double(pts.size() - 1) / decades;
    if (decades < 2.0 * (1.0 - 1e-9) || per_decade < 8.0 * (1.0 - 1e-9)) return out;

    std::vector<const GrowthPoint*> fit_window, last_decade;
    for (const auto& p : pts) {
        if (!std::isfinite(p.F)) return out;
        if (p.R >= rmax / 100.0 * (1.0 - 1e-12)) fit_window.push_back(&p);
        if (p.R >= rmax / 10.0 * (1.0 - 1e-12)) last_decade.push_back(&p);
    }

    double fmax = 0.0;
    for (auto* p : fit_window) fmax = std::max(fmax, std::fabs(p->F));
    if (fmax <= 1e-300) {
        out.classification = GrowthClass::TendsToZero;
        out.slope = 0.0;
        return out;
    }
    for (auto* p : fit_window)
        if (!(p->F > 0.0)) return out;  // mixed or vanishing signs: no call

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double nfit = double(fit_window.size());
    for (auto* p : fit_window) {
        const double x = std::log(p->R), y = std::log(p->F);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.slope = (nfit * sxy - sx * sy) / (nfit * sxx - sx * sx);

    double lo = last_decade.front()->F, hi = lo, mean = 0.0;
    for (auto* p : last_decade) {
        lo = std::min(lo, p->F);
        hi = std::max(hi, p->F);
        mean += p->F;
    }
    mean /= double(last_decade.size());
    const double spread = (hi - lo) / std::fabs(mean);

    if (out.slope > 0.1)
        out.classification = GrowthClass::Diverges;
    else if (out.slope < -0.1)
        out.classification = GrowthClass::TendsToZero;
    else if (std::fabs(out.slope) <= 0.05 && spread <= 0.05) {
        out.classification = GrowthClass::PositiveConstant;
        out.limit_estimate = mean;
    }
    return out;
}

std::vector<double> RGrid::points() const {
    std::vector<double> pts;
    const double decades = std::log10(rmax / rmin);
    const int npts = int(std::lround(decades * points_per_decade)) + 1;
    pts.reserve(npts);
    for (int i = 0; i < npts; ++i) {
        const double f = double(i) / double(npts - 1);
        pts.push_back(rmin * std::pow(rmax / rmin, f));
    }
    return pts;
}

GrowthSeries growth_scan(const SolutionPair& pair, const GrowthFunctionalSpec& spec,
                         const RGrid& grid, const QuadratureSpec& quad) {
    std::vector<GrowthPoint> pts;
    for (double R : grid.points()) {
        double F = 0.0;
        try {
            F = spec.kind == GrowthKind::T4 ? growth_T4(pair, spec, R, quad)
                                            : growth_T7(pair, spec, R, quad);
        } catch (const std::exception&) {
            F = std::numeric_limits<double>::quiet_NaN();
        }
        pts.push_back({R, F});
    }
    return limsup_estimate(std::move(pts));
}

}  // namespace liouville
