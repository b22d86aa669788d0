#include "liouville/flux_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "liouville/kernels.hpp"
#include "liouville/rng.hpp"

namespace liouville {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double norm_sq(std::span<const double> v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

}  // namespace

FluxField make_p_laplacian(int n, double p) {
    require(n >= 1, "p-laplacian requires n >= 1");
    require(p > 1.0 && p <= 2.0, "p-laplacian exponent must satisfy 1 < p <= 2");
    FluxField f;
    f.kind = FluxField::Kind::PLaplacian;
    f.dim = n;
    f.alpha = p;
    f.p = p;
    f.name = "p_laplacian(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
    f.flux = [p](std::span<const double>, std::span<const double> xi,
                 std::span<double> out) {
        const double m = norm_sq(xi);
        const double fac = m > 0.0 ? std::pow(m, 0.5 * (p - 2.0)) : 0.0;
        for (std::size_t j = 0; j < xi.size(); ++j) out[j] = fac * xi[j];
    };
    return f;
}

FluxField make_modified_p_laplacian(int n, double p) {
    require(n >= 2, "modified p-laplacian is defined for n >= 2 only");
    require(p > 1.0 && p <= 2.0, "modified p-laplacian exponent must satisfy 1 < p <= 2");
    FluxField f;
    f.kind = FluxField::Kind::ModifiedPLaplacian;
    f.dim = n;
    f.alpha = p;
    f.p = p;
    f.name = "modified_p_laplacian(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
    f.flux = [p](std::span<const double>, std::span<const double> xi,
                 std::span<double> out) {
        for (std::size_t j = 0; j < xi.size(); ++j) {
            const double s = xi[j];
            out[j] = s == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(s), p - 1.0), s);
        }
    };
    return f;
}

FluxField make_weighted_p_laplacian(int n, double p,
                                    std::function<double(std::span<const double>)> a,
                                    double bound,
                                    std::function<double(double)> radial_a) {
    require(n >= 1, "weighted p-laplacian requires n >= 1");
    require(p > 1.0 && p <= 2.0, "weighted p-laplacian exponent must satisfy 1 < p <= 2");
    require(bool(a), "weighted p-laplacian requires a weight evaluator");
    require(bound > 0.0, "weight bound must be positive");
    FluxField f;
    f.kind = FluxField::Kind::WeightedPLaplacian;
    f.dim = n;
    f.alpha = p;
    f.p = p;
    f.name = "weighted_p_laplacian(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
    f.weight = std::move(a);
    f.weight_bound = bound;
    f.radial_weight = std::move(radial_a);
    f.flux = [p, w = f.weight](std::span<const double> x, std::span<const double> xi,
                               std::span<double> out) {
        const double m = norm_sq(xi);
        const double fac = m > 0.0 ? w(x) * std::pow(m, 0.5 * (p - 2.0)) : 0.0;
        for (std::size_t j = 0; j < xi.size(); ++j) out[j] = fac * xi[j];
    };
    return f;
}

namespace {

// One batch of sample triples in structure-of-arrays layout.
struct Batch {
    int dim = 0;
    std::size_t n = 0;
    int stratum = 0;  // 0 = bulk, 1..3 = near-diagonal eps index + 1
    std::vector<double> x;         // row-major, sample i at [i*dim, (i+1)*dim)
    std::vector<double> xi1, xi2;  // component j of sample i at [j*n + i]

    void finalize_components(const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b) {
        xi1.resize(std::size_t(dim) * n);
        xi2.resize(std::size_t(dim) * n);
        for (int j = 0; j < dim; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                xi1[std::size_t(j) * n + i] = a[i][std::size_t(j)];
                xi2[std::size_t(j) * n + i] = b[i][std::size_t(j)];
            }
    }
};

int grid_points_per_axis(int dim) {
    switch (dim) {
        case 1: return 17;
        case 2: return 9;
        case 3: return 5;
        default: return dim <= 6 ? 3 : 0;
    }
}

std::vector<std::vector<double>> make_grid(int dim, double box) {
    const int m = grid_points_per_axis(dim);
    std::vector<std::vector<double>> pts;
    if (m == 0) {
        pts.push_back(std::vector<double>(dim, 0.0));
        return pts;
    }
    std::vector<double> axis(m);
    for (int i = 0; i < m; ++i)
        axis[i] = -box + 2.0 * box * double(i) / double(m - 1);
    axis[(m - 1) / 2] = 0.0;  // odd m: pin the center exactly

    std::vector<int> idx(dim, 0);
    for (;;) {
        std::vector<double> p(dim);
        for (int j = 0; j < dim; ++j) p[j] = axis[idx[j]];
        pts.push_back(std::move(p));
        int j = 0;
        while (j < dim && ++idx[j] == m) idx[j++] = 0;
        if (j == dim) break;
    }
    return pts;
}

std::vector<std::vector<double>> make_x_list(int dim, double box) {
    std::vector<std::vector<double>> xs;
    xs.push_back(std::vector<double>(dim, 0.0));
    for (int j = 0; j < dim; ++j) {
        std::vector<double> a(dim, 0.0), b(dim, 0.0);
        a[j] = 0.5 * box;
        b[j] = -box;
        xs.push_back(std::move(a));
        xs.push_back(std::move(b));
    }
    return xs;
}

struct PairList {
    std::vector<std::vector<double>> xi1, xi2;
};

PairList grid_pairs(const std::vector<std::vector<double>>& grid) {
    PairList out;
    const std::size_t npts = grid.size();
    if (npts * npts <= 40000) {
        for (const auto& a : grid)
            for (const auto& b : grid) {
                out.xi1.push_back(a);
                out.xi2.push_back(b);
            }
    } else {
        const int dim = int(grid.front().size());
        std::vector<double> zero(dim, 0.0);
        for (std::size_t i = 0; i < npts; ++i) {
            out.xi1.push_back(grid[i]);
            out.xi2.push_back(zero);
            std::vector<double> neg = grid[i];
            for (auto& c : neg) c = -c;
            out.xi1.push_back(grid[i]);
            out.xi2.push_back(std::move(neg));
            out.xi1.push_back(grid[i]);
            out.xi2.push_back(grid[(i + 1) % npts]);
        }
    }
    return out;
}

PairList near_diagonal_pairs(const std::vector<std::vector<double>>& grid,
                             double eps) {
    PairList out;
    const int dim = int(grid.front().size());
    for (const auto& b : grid)
        for (int j = 0; j < dim; ++j) {
            std::vector<double> hi = b, lo = b;
            hi[j] += eps;
            out.xi1.push_back(b);
            out.xi2.push_back(hi);
            std::vector<double> s1 = b, s2 = b;
            s1[j] -= 0.5 * eps;
            s2[j] += 0.5 * eps;
            out.xi1.push_back(std::move(s1));
            out.xi2.push_back(std::move(s2));
        }
    return out;
}

Batch batch_from_pairs(int dim, int stratum, const PairList& pl,
                       const std::vector<std::vector<double>>& x_list) {
    Batch b;
    b.dim = dim;
    b.stratum = stratum;
    b.n = pl.xi1.size();
    b.x.resize(b.n * dim);
    for (std::size_t i = 0; i < b.n; ++i) {
        const auto& xv = x_list[i % x_list.size()];
        std::copy(xv.begin(), xv.end(), b.x.begin() + i * dim);
    }
    b.finalize_components(pl.xi1, pl.xi2);
    return b;
}

Batch random_batch(int dim, double box, std::size_t count, Xoshiro256pp& rng) {
    Batch b;
    b.dim = dim;
    b.stratum = 0;
    b.n = count;
    b.x.resize(count * dim);
    b.xi1.resize(count * std::size_t(dim));
    b.xi2.resize(count * std::size_t(dim));
    for (std::size_t i = 0; i < count; ++i) {
        for (int j = 0; j < dim; ++j) b.x[i * dim + j] = rng.uniform(-box, box);
        for (int j = 0; j < dim; ++j)
            b.xi1[std::size_t(j) * count + i] = rng.uniform(-box, box);
        for (int j = 0; j < dim; ++j)
            b.xi2[std::size_t(j) * count + i] = rng.uniform(-box, box);
    }
    return b;
}

struct CheckRunner {
    CheckRunner(const FluxField& f, const SamplePlan& p) : field(f), plan(p) {}
    const FluxField& field;
    const SamplePlan& plan;
    bool alpha_mode = false;
    double alpha = 2.0;

    MonotonicityReport rep;
    Violation blowup_witness;  // argmax triple of the eps = 1e-6 stratum

    void add_violation(std::string reason, double value, std::span<const double> x,
                       std::span<const double> xi1, std::span<const double> xi2) {
        ++rep.violation_count;
        if (rep.violations.size() < MonotonicityReport::kMaxStoredViolations) {
            Violation v;
            v.reason = std::move(reason);
            v.value = value;
            v.x.assign(x.begin(), x.end());
            v.xi1.assign(xi1.begin(), xi1.end());
            v.xi2.assign(xi2.begin(), xi2.end());
            rep.violations.push_back(std::move(v));
        }
    }

    void consume(const Batch& b) {
        const std::size_t n = b.n;
        if (n == 0) return;
        const int dim = b.dim;

        std::vector<double> pairing(n), dasq(n), weights;
        std::vector<const double*> p1(dim), p2(dim);
        for (int j = 0; j < dim; ++j) {
            p1[j] = b.xi1.data() + std::size_t(j) * n;
            p2[j] = b.xi2.data() + std::size_t(j) * n;
        }

        const double* wptr = nullptr;
        if (field.kind == FluxField::Kind::WeightedPLaplacian) {
            weights.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                std::span<const double> x(b.x.data() + i * dim, std::size_t(dim));
                const double w = field.weight(x);
                weights[i] = w;
                if (!(w >= -plan.tolerance) || w > field.weight_bound + plan.tolerance ||
                    !std::isfinite(w)) {
                    std::vector<double> zero(dim, 0.0);
                    add_violation("weight outside [0, bound]", w, x, zero, zero);
                }
            }
            wptr = weights.data();
        }

        switch (field.kind) {
            case FluxField::Kind::PLaplacian:
                kern::plap_pair(field.p, dim, n, p1.data(), p2.data(), nullptr,
                                pairing.data(), dasq.data());
                break;
            case FluxField::Kind::WeightedPLaplacian:
                kern::plap_pair(field.p, dim, n, p1.data(), p2.data(), wptr,
                                pairing.data(), dasq.data());
                break;
            case FluxField::Kind::ModifiedPLaplacian:
                kern::mplap_pair(field.p, dim, n, p1.data(), p2.data(),
                                 pairing.data(), dasq.data());
                break;
            case FluxField::Kind::Generic: {
                std::vector<double> a1(dim), a2(dim), v1(dim), v2(dim);
                for (std::size_t i = 0; i < n; ++i) {
                    std::span<const double> x(b.x.data() + i * dim, std::size_t(dim));
                    for (int j = 0; j < dim; ++j) {
                        v1[j] = p1[j][i];
                        v2[j] = p2[j][i];
                    }
                    field.flux(x, v1, a1);
                    field.flux(x, v2, a2);
                    double pr = 0.0, da = 0.0;
                    for (int j = 0; j < dim; ++j) {
                        const double d = a1[j] - a2[j];
                        pr += (v1[j] - v2[j]) * d;
                        da += d * d;
                    }
                    pairing[i] = pr;
                    dasq[i] = da;
                }
                break;
            }
        }

        std::vector<double> xv(dim), w1(dim), w2(dim);
        for (std::size_t i = 0; i < n; ++i) {
            ++rep.samples_checked;
            for (int j = 0; j < dim; ++j) {
                xv[j] = b.x[i * dim + j];
                w1[j] = p1[j][i];
                w2[j] = p2[j][i];
            }
            const double pr = pairing[i];
            const double da = dasq[i];
            if (!std::isfinite(pr) || !std::isfinite(da)) {
                add_violation("non-finite flux evaluation", pr, xv, w1, w2);
                continue;
            }
            rep.min_pairing = std::min(rep.min_pairing, pr);
            if (pr < -plan.tolerance)
                add_violation("pairing negative beyond tolerance", pr, xv, w1, w2);

            if (!alpha_mode) continue;
            if (pr > plan.tolerance) {
                const double ratio =
                    da > 0.0 ? std::pow(da, 0.5 * alpha) / std::pow(pr, alpha - 1.0) : 0.0;
                if (ratio > rep.k_hat) rep.k_hat = ratio;
                auto& smax = rep.stratum_max_ratio[std::size_t(b.stratum)];
                if (ratio > smax) {
                    smax = ratio;
                    if (b.stratum == 3) {
                        blowup_witness.value = ratio;
                        blowup_witness.x.assign(xv.begin(), xv.end());
                        blowup_witness.xi1.assign(w1.begin(), w1.end());
                        blowup_witness.xi2.assign(w2.begin(), w2.end());
                    }
                }
            } else {
                double dxisq = 0.0;
                for (int j = 0; j < dim; ++j)
                    dxisq += (w1[j] - w2[j]) * (w1[j] - w2[j]);
                if (da > 1e-8 + 1e-4 * dxisq)
                    add_violation("nonzero flux difference with vanishing pairing", da,
                                  xv, w1, w2);
            }
        }
    }

    void check_zero_condition() {
        // Definition-1 requirement A_i(x, 0) = 0, sampled over x
        const auto x_list = make_x_list(field.dim, plan.box);
        Xoshiro256pp rng(plan.seed ^ 0x9e3779b97f4a7c15ULL);
        std::vector<double> zero(field.dim, 0.0), out(field.dim), x(field.dim);
        auto probe = [&](std::span<const double> xs) {
            field.flux(xs, zero, out);
            for (int j = 0; j < field.dim; ++j)
                if (!(std::fabs(out[j]) <= plan.tolerance)) {
                    add_violation("flux at zero gradient is nonzero", out[j], xs, zero, zero);
                    return;
                }
        };
        for (const auto& xs : x_list) probe(xs);
        for (int i = 0; i < 1000; ++i) {
            for (int j = 0; j < field.dim; ++j) x[j] = rng.uniform(-plan.box, plan.box);
            probe(x);
        }
    }

    MonotonicityReport run() {
        rep.tolerance = plan.tolerance;

        if (!alpha_mode) check_zero_condition();

        if (plan.stratified) {
            const auto grid = make_grid(field.dim, plan.box);
            const auto x_list = make_x_list(field.dim, plan.box);
            consume(batch_from_pairs(field.dim, 0, grid_pairs(grid), x_list));
            for (std::size_t e = 0; e < kNearDiagonalEps.size(); ++e)
                consume(batch_from_pairs(field.dim, int(e) + 1,
                                         near_diagonal_pairs(grid, kNearDiagonalEps[e]),
                                         x_list));
        }

        Xoshiro256pp rng(plan.seed);
        std::size_t left = plan.count;
        while (left > 0) {
            const std::size_t chunk = std::min<std::size_t>(left, 8192);
            consume(random_batch(field.dim, plan.box, chunk, rng));
            left -= chunk;
        }

        if (alpha_mode) {
            if (!std::isfinite(rep.k_hat)) {
                std::vector<double> none;
                add_violation("alpha-monotonicity ratio is not finite", rep.k_hat, none,
                              none, none);
            }
            if (plan.stratified && rep.stratum_max_ratio[1] > 0.0 &&
                rep.stratum_max_ratio[3] > 10.0 * rep.stratum_max_ratio[1]) {
                rep.ratio_blowup = true;
                ++rep.violation_count;
                if (rep.violations.size() < MonotonicityReport::kMaxStoredViolations) {
                    Violation v = blowup_witness;
                    v.reason =
                        "alpha-monotonicity ratio diverges toward the diagonal "
                        "(claimed alpha exceeds the flux exponent)";
                    rep.violations.push_back(std::move(v));
                }
            }
        }

        if (rep.samples_checked == 0)
            rep.min_pairing = 0.0;
        rep.pass = rep.violation_count == 0;
        return rep;
    }
};

}  // namespace

MonotonicityReport check_monotonicity(const FluxField& field, const SamplePlan& plan) {
    require(field.dim >= 1, "flux field dimension must be >= 1");
    require(bool(field.flux), "flux field has no evaluator");
    CheckRunner r(field, plan);
    return r.run();
}

MonotonicityReport check_alpha_monotonicity(const FluxField& field, double alpha,
                                            const SamplePlan& plan) {
    require(field.dim >= 1, "flux field dimension must be >= 1");
    require(bool(field.flux), "flux field has no evaluator");
    require(alpha > 1.0, "alpha-monotonicity requires alpha > 1");
    CheckRunner r(field, plan);
    r.alpha_mode = true;
    r.alpha = alpha;
    return r.run();
}

}  // namespace liouville
