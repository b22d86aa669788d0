#include "liouville/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace liouville {

namespace {

GaussRule compute_gauss(int m) {
    GaussRule rule;
    rule.x.resize(m);
    rule.w.resize(m);
    for (int i = 0; i < m; ++i) {
        // Newton from the Chebyshev-angle initial guess
        double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= m; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.x[m - 1 - i] = x;
        rule.w[m - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
    if (order < 1 || order > 256) throw std::invalid_argument("gauss order out of range");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
    return it->second;
}

namespace {

void append_panel(RadialQuadrature& q, const GaussRule& g, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        q.r.push_back(mid + half * g.x[i]);
        q.w.push_back(half * g.w[i]);
    }
}

}  // namespace

RadialQuadrature make_radial_quadrature(double rmax, int panels_per_decade,
                                        int nodes_per_panel, int decades) {
    if (!(rmax > 0.0)) throw std::invalid_argument("rmax must be positive");
    if (panels_per_decade < 1 || nodes_per_panel < 1 || decades < 1)
        throw std::invalid_argument("quadrature resolution must be positive");
    const GaussRule& g = gauss_rule(nodes_per_panel);
    RadialQuadrature q;
    const int npanels = panels_per_decade * decades;
    q.r.reserve(std::size_t(npanels + 1) * nodes_per_panel);
    q.w.reserve(std::size_t(npanels + 1) * nodes_per_panel);
    const double r0 = rmax * std::pow(10.0, -double(decades));
    append_panel(q, g, 0.0, r0);
    double lo = r0;
    const double step = std::pow(10.0, 1.0 / panels_per_decade);
    for (int i = 1; i <= npanels; ++i) {
        const double hi = i == npanels ? rmax : r0 * std::pow(step, i);
        append_panel(q, g, lo, hi);
        lo = hi;
    }
    return q;
}

RadialQuadrature make_linear_quadrature(double a, double b, int panels,
                                        int nodes_per_panel) {
    if (!(b > a)) throw std::invalid_argument("empty interval");
    const GaussRule& g = gauss_rule(nodes_per_panel);
    RadialQuadrature q;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + (b - a) * double(i) / panels;
        const double hi = a + (b - a) * double(i + 1) / panels;
        append_panel(q, g, lo, hi);
    }
    return q;
}

QuadratureResult integrate_radial(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& f_batch,
    double rmax, int panels_per_decade, int nodes_per_panel, int decades) {
    auto run = [&](int nodes) {
        const RadialQuadrature q =
            make_radial_quadrature(rmax, panels_per_decade, nodes, decades);
        std::vector<double> f(q.r.size());
        f_batch(q.r, f);
        double s = 0.0;
        for (std::size_t i = 0; i < q.r.size(); ++i) s += q.w[i] * f[i];
        return s;
    };
    const double coarse = run(nodes_per_panel);
    const double fine = run(2 * nodes_per_panel);
    return {fine, std::fabs(fine - coarse)};
}

}  // namespace liouville
