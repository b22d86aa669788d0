#include "liouville/weak_form.hpp"

#include <cmath>
#include <stdexcept>

#include "liouville/rng.hpp"

namespace liouville {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

WeakResidualReport finish_report(double R, double flux_term, double zero_term,
                                 double abs_err, double tol) {
    WeakResidualReport rep;
    rep.R = R;
    rep.flux_term = flux_term;
    rep.zero_order_term = zero_term;
    rep.residual = flux_term - zero_term;
    rep.scale = std::fabs(flux_term) + std::fabs(zero_term);
    rep.abs_error_estimate = abs_err;
    rep.tolerance = tol;
    rep.pass = rep.residual >= -tol * rep.scale;
    if (!std::isfinite(rep.residual) ||
        (rep.scale > 0.0 && abs_err > 0.01 * rep.scale))
        rep.status = CheckStatus::Indeterminate;
    else
        rep.status = rep.pass ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

struct RadialReduction {
    double angular_flux = 0.0;  // multiplies the flux-band integral
    double angular_zero = 0.0;  // multiplies the zero-order integral
    std::function<double(double)> radial_weight;  // null => 1
    bool ok = false;
};

RadialReduction reduction_for(const FluxField& field) {
    RadialReduction red;
    const double area = unit_sphere_area(field.dim);
    red.angular_zero = area;
    switch (field.kind) {
        case FluxField::Kind::PLaplacian:
            red.angular_flux = area;
            red.ok = true;
            break;
        case FluxField::Kind::WeightedPLaplacian:
            red.angular_flux = area;
            red.radial_weight = field.radial_weight;
            red.ok = bool(field.radial_weight);
            break;
        case FluxField::Kind::ModifiedPLaplacian:
            red.angular_flux = sphere_pnorm_factor(field.dim, field.p);
            red.ok = true;
            break;
        case FluxField::Kind::Generic:
            red.ok = false;
            break;
    }
    return red;
}

WeakResidualReport mc_report(const FluxField& field, double q, const SolutionPair& pair,
                             const CutoffFunction& phi, const QuadratureSpec& spec) {
    const McEstimate est =
        mc_oracle_residual(field, q, pair, phi, spec.mc_samples, spec.seed);
    WeakResidualReport rep;
    rep.R = phi.R;
    rep.flux_term = est.flux_term;
    rep.zero_order_term = est.zero_order_term;
    rep.residual = est.value;
    rep.scale = std::fabs(est.flux_term) + std::fabs(est.zero_order_term);
    rep.abs_error_estimate = est.std_error;
    rep.tolerance = 1e-6;
    rep.pass = rep.residual >= -rep.tolerance * rep.scale;
    if (!std::isfinite(rep.residual) ||
        (rep.scale > 0.0 && rep.abs_error_estimate > 0.01 * rep.scale))
        rep.status = CheckStatus::Indeterminate;
    else
        rep.status = rep.pass ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

}  // namespace

double unit_sphere_area(int n) {
    require(n >= 1, "dimension must be >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

namespace {

double sphere_pnorm_quad(int n, double p, double rel_tol) {
    // tensor Gauss over the sphere's angle parametrization, doubled until
    // two consecutive refinements agree
    auto eval_n2 = [&](int panels) {
        const RadialQuadrature q = make_linear_quadrature(0.0, 2.0 * M_PI, panels, 16);
        double s = 0.0;
        for (std::size_t i = 0; i < q.r.size(); ++i) {
            const double c = std::cos(q.r[i]), sn = std::sin(q.r[i]);
            s += q.w[i] * (std::pow(std::fabs(c), p) + std::pow(std::fabs(sn), p));
        }
        return s;
    };
    auto eval_n3 = [&](int panels) {
        const RadialQuadrature qu = make_linear_quadrature(-1.0, 1.0, panels, 16);
        const RadialQuadrature qp = make_linear_quadrature(0.0, 2.0 * M_PI, panels, 16);
        double s = 0.0;
        for (std::size_t i = 0; i < qu.r.size(); ++i) {
            const double u = qu.r[i];
            const double rho = std::sqrt(std::max(0.0, 1.0 - u * u));
            const double zu = std::pow(std::fabs(u), p);
            double inner = 0.0;
            for (std::size_t j = 0; j < qp.r.size(); ++j) {
                const double w1 = rho * std::cos(qp.r[j]);
                const double w2 = rho * std::sin(qp.r[j]);
                inner += qp.w[j] *
                         (std::pow(std::fabs(w1), p) + std::pow(std::fabs(w2), p) + zu);
            }
            s += qu.w[i] * inner;
        }
        return s;
    };
    auto eval = [&](int panels) { return n == 2 ? eval_n2(panels) : eval_n3(panels); };
    double prev = eval(4);
    for (int panels = 8; panels <= 256; panels *= 2) {
        const double cur = eval(panels);
        if (std::fabs(cur - prev) <= rel_tol * std::fabs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

double sphere_pnorm_mc(int n, double p, double rel_tol) {
    Xoshiro256pp rng(0x5eedbea7u ^ std::uint64_t(n));
    const double area = unit_sphere_area(n);
    double sum = 0.0, sumsq = 0.0;
    std::size_t count = 0;
    std::vector<double> z(n);
    bool spare_valid = false;
    double spare = 0.0;
    auto normal = [&]() {
        if (spare_valid) {
            spare_valid = false;
            return spare;
        }
        const double u1 = rng.uniform_pos(), u2 = rng.uniform();
        const double m = std::sqrt(-2.0 * std::log(u1));
        spare = m * std::sin(2.0 * M_PI * u2);
        spare_valid = true;
        return m * std::cos(2.0 * M_PI * u2);
    };
    const std::size_t batch = 65536, max_batches = 512;
    for (std::size_t b = 0; b < max_batches; ++b) {
        for (std::size_t i = 0; i < batch; ++i) {
            double nrm = 0.0;
            for (int j = 0; j < n; ++j) {
                z[j] = normal();
                nrm += z[j] * z[j];
            }
            nrm = std::sqrt(nrm);
            if (nrm < 1e-300) nrm = 1.0;
            double f = 0.0;
            for (int j = 0; j < n; ++j) f += std::pow(std::fabs(z[j] / nrm), p);
            sum += f;
            sumsq += f * f;
        }
        count += batch;
        const double mean = sum / double(count);
        const double var = std::max(0.0, sumsq / double(count) - mean * mean);
        const double se = std::sqrt(var / double(count));
        if (se <= rel_tol * mean / 3.0) break;
    }
    return area * sum / double(count);
}

}  // namespace

double sphere_pnorm_factor(int n, double p, double rel_tol) {
    require(n >= 1, "dimension must be >= 1");
    require(p > 0.0, "exponent must be positive");
    if (n == 1) return 2.0;  // counting measure on {-1, +1}
    if (n <= 3) return sphere_pnorm_quad(n, p, rel_tol);
    return sphere_pnorm_mc(n, p, rel_tol);
}

WeakResidualReport weak_residual_with_test_fn(
    const FluxField& field, double q, const SolutionPair& pair,
    const std::function<double(double)>& phi, const std::function<double(double)>& dphi,
    double rmax, const QuadratureSpec& spec) {
    require(field.dim == pair.n, "flux field dimension must match the pair's n");
    require(rmax > 0.0, "test function support must be positive");
    const RadialReduction red = reduction_for(field);
    require(red.ok, "no radial reduction for this field; use the Monte Carlo scheme");

    const double m = field.p - 1.0;
    const int n = field.dim;

    auto flux_batch = [&](const std::vector<double>& r, std::vector<double>& f) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double w = red.radial_weight ? red.radial_weight(r[i]) : 1.0;
            f[i] = dphi(r[i]) * w * flux_magnitude_diff(pair, m, r[i]) *
                   std::pow(r[i], double(n - 1));
        }
    };
    auto zero_batch = [&](const std::vector<double>& r, std::vector<double>& f) {
        for (std::size_t i = 0; i < r.size(); ++i)
            f[i] = sigma_diff(pair, q, r[i]) * phi(r[i]) * std::pow(r[i], double(n - 1));
    };

    const QuadratureResult qf = integrate_radial(flux_batch, rmax, spec.panels_per_decade,
                                                 spec.nodes_per_panel);
    const QuadratureResult qz = integrate_radial(zero_batch, rmax, spec.panels_per_decade,
                                                 spec.nodes_per_panel);
    return finish_report(0.0, red.angular_flux * qf.value, red.angular_zero * qz.value,
                         red.angular_flux * qf.abs_error_estimate +
                             red.angular_zero * qz.abs_error_estimate,
                         1e-6);
}

WeakResidualReport weak_residual(const FluxField& field, double q,
                                 const SolutionPair& pair, const CutoffFunction& phi,
                                 const QuadratureSpec& spec) {
    require(field.dim == pair.n, "flux field dimension must match the pair's n");
    const double rmax = spec.rmax > 0.0 ? spec.rmax : 2.0 * phi.R;
    require(rmax >= 2.0 * phi.R, "quadrature rmax must cover the cutoff support (2R)");

    if (spec.scheme == QuadratureSpec::Scheme::MonteCarlo ||
        field.kind == FluxField::Kind::Generic ||
        (field.kind == FluxField::Kind::WeightedPLaplacian && !field.radial_weight))
        return mc_report(field, q, pair, phi, spec);

    const RadialReduction red = reduction_for(field);
    const double m = field.p - 1.0;
    const int n = field.dim;

    // phi' vanishes outside [R, 2R]: integrate the flux band on linear panels
    auto eval_flux = [&](int nodes) {
        const RadialQuadrature qq = make_linear_quadrature(phi.R, 2.0 * phi.R, 16, nodes);
        double s = 0.0;
        for (std::size_t i = 0; i < qq.r.size(); ++i) {
            const double r = qq.r[i];
            const double w = red.radial_weight ? red.radial_weight(r) : 1.0;
            s += qq.w[i] * phi.deriv(r) * w * flux_magnitude_diff(pair, m, r) *
                 std::pow(r, double(n - 1));
        }
        return s;
    };
    const double flux_coarse = eval_flux(spec.nodes_per_panel);
    const double flux_fine = eval_flux(2 * spec.nodes_per_panel);

    auto zero_batch = [&](const std::vector<double>& r, std::vector<double>& f) {
        for (std::size_t i = 0; i < r.size(); ++i)
            f[i] = sigma_diff(pair, q, r[i]) * phi.value(r[i]) *
                   std::pow(r[i], double(n - 1));
    };
    const QuadratureResult qz = integrate_radial(
        zero_batch, 2.0 * phi.R, spec.panels_per_decade, spec.nodes_per_panel);

    return finish_report(phi.R, red.angular_flux * flux_fine,
                         red.angular_zero * qz.value,
                         red.angular_flux * std::fabs(flux_fine - flux_coarse) +
                             red.angular_zero * qz.abs_error_estimate,
                         1e-6);
}

std::vector<WeakResidualReport> weak_residual_family(const FluxField& field, double q,
                                                     const SolutionPair& pair,
                                                     std::span<const double> Rs,
                                                     const QuadratureSpec& spec) {
    std::vector<WeakResidualReport> out;
    out.reserve(Rs.size());
    for (double R : Rs)
        out.push_back(weak_residual(field, q, pair, make_cutoff(R), spec));
    return out;
}

McEstimate mc_oracle_residual(const FluxField& field, double q, const SolutionPair& pair,
                              const CutoffFunction& phi, std::size_t mc_samples,
                              std::uint64_t seed) {
    require(field.dim == pair.n, "flux field dimension must match the pair's n");
    require(mc_samples >= 2, "need at least two samples");
    const int n = field.dim;
    const double rmax = 2.0 * phi.R;
    const double vol = unit_sphere_area(n) / double(n) * std::pow(rmax, double(n));

    Xoshiro256pp rng(seed);
    bool spare_valid = false;
    double spare = 0.0;
    auto normal = [&]() {
        if (spare_valid) {
            spare_valid = false;
            return spare;
        }
        const double u1 = rng.uniform_pos(), u2 = rng.uniform();
        const double mgn = std::sqrt(-2.0 * std::log(u1));
        spare = mgn * std::sin(2.0 * M_PI * u2);
        spare_valid = true;
        return mgn * std::cos(2.0 * M_PI * u2);
    };

    std::vector<double> dir(n), x(n), grad_u(n), grad_v(n), au(n), av(n);
    double sum = 0.0, sumsq = 0.0, sum_flux = 0.0, sum_zero = 0.0;
    for (std::size_t i = 0; i < mc_samples; ++i) {
        double nrm = 0.0;
        for (int j = 0; j < n; ++j) {
            dir[j] = normal();
            nrm += dir[j] * dir[j];
        }
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300) {
            std::fill(dir.begin(), dir.end(), 0.0);
            dir[0] = 1.0;
            nrm = 1.0;
        }
        const double r = rmax * std::pow(rng.uniform_pos(), 1.0 / double(n));
        for (int j = 0; j < n; ++j) {
            dir[j] /= nrm;
            x[j] = r * dir[j];
        }
        const double du = pair.u.deriv(r), dv = pair.v.deriv(r);
        for (int j = 0; j < n; ++j) {
            grad_u[j] = du * dir[j];
            grad_v[j] = dv * dir[j];
        }
        field.flux(x, grad_u, au);
        field.flux(x, grad_v, av);
        const double dphi = phi.deriv(r);
        double flux_part = 0.0;
        for (int j = 0; j < n; ++j) flux_part += dphi * dir[j] * (au[j] - av[j]);
        const double zero_part =
            (signed_power(pair.u.value(r), q) - signed_power(pair.v.value(r), q)) *
            phi.value(r);
        const double f = flux_part - zero_part;
        sum += f;
        sumsq += f * f;
        sum_flux += flux_part;
        sum_zero += zero_part;
    }
    const double mean = sum / double(mc_samples);
    const double var = std::max(0.0, sumsq / double(mc_samples) - mean * mean);
    McEstimate est;
    est.value = vol * mean;
    est.std_error = vol * std::sqrt(var / double(mc_samples - 1));
    est.samples = mc_samples;
    est.flux_term = vol * sum_flux / double(mc_samples);
    est.zero_order_term = vol * sum_zero / double(mc_samples);
    return est;
}

}  // namespace liouville
