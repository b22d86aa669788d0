#include "liouville/kernels.hpp"

#include <cmath>

// Scalar reference lane. Straight libm; this is the ground truth the SIMD
// lane is tested against.

namespace liouville::kern::scalar {

static inline double pow_pos1(double t, double e) {
    if (!(t > 0.0)) return e == 0.0 ? (t > 0.0 ? 1.0 : 0.0) : 0.0;
    if (e == 0.0) return 1.0;
    if (e == 1.0) return t;
    if (e == 2.0) return t * t;
    return std::pow(t, e);
}

void pow_pos(const double* t, std::size_t n, double e, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = pow_pos1(t[i], e);
}

void plap_pair(double p, int dim, std::size_t n,
               const double* const* xi1, const double* const* xi2,
               const double* weight, double* pairing, double* dasq) {
    const bool identity = (p == 2.0);
    const double half_pm2 = 0.5 * (p - 2.0);
    for (std::size_t i = 0; i < n; ++i) {
        double m1 = 0.0, m2 = 0.0;
        for (int j = 0; j < dim; ++j) {
            m1 += xi1[j][i] * xi1[j][i];
            m2 += xi2[j][i] * xi2[j][i];
        }
        const double f1 = identity ? 1.0 : (m1 > 0.0 ? std::pow(m1, half_pm2) : 0.0);
        const double f2 = identity ? 1.0 : (m2 > 0.0 ? std::pow(m2, half_pm2) : 0.0);
        const double w = weight ? weight[i] : 1.0;
        double pr = 0.0, da = 0.0;
        for (int j = 0; j < dim; ++j) {
            const double a = w * (f1 * xi1[j][i] - f2 * xi2[j][i]);
            pr += (xi1[j][i] - xi2[j][i]) * a;
            da += a * a;
        }
        pairing[i] = pr;
        dasq[i] = da;
    }
}

void mplap_pair(double p, int dim, std::size_t n,
                const double* const* xi1, const double* const* xi2,
                double* pairing, double* dasq) {
    const bool identity = (p == 2.0);
    const double pm1 = p - 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pr = 0.0, da = 0.0;
        for (int j = 0; j < dim; ++j) {
            const double s1 = xi1[j][i], s2 = xi2[j][i];
            double a1, a2;
            if (identity) {
                a1 = s1;
                a2 = s2;
            } else {
                a1 = s1 == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(s1), pm1), s1);
                a2 = s2 == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(s2), pm1), s2);
            }
            const double a = a1 - a2;
            pr += (s1 - s2) * a;
            da += a * a;
        }
        pairing[i] = pr;
        dasq[i] = da;
    }
}

void power_profile(double k, const PowerTerm* terms, int nterms,
                   const double* r, std::size_t n, double* val, double* dval) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ri = r[i];
        const double rk = pow_pos1(ri, k);
        const double b = 1.0 + rk;
        const double rkm1 = pow_pos1(ri, k - 1.0);
        double v = 0.0, dv = 0.0;
        for (int t = 0; t < nterms; ++t) {
            const double be = pow_pos1(b, terms[t].expo);
            v += terms[t].coef * be;
            if (dval) {
                const double bem1 = pow_pos1(b, terms[t].expo - 1.0);
                dv += terms[t].coef * terms[t].expo * bem1 * k * rkm1;
            }
        }
        if (val) val[i] = v;
        if (dval) dval[i] = dv;
    }
}

}  // namespace liouville::kern::scalar
