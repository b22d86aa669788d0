#include "liouville/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace liouville {

namespace {

// eta(t) = psi(2-t) / (psi(2-t) + psi(t-1)) with psi(s) = exp(-1/s), written
// as a logistic in E(t) = 1/(2-t) - 1/(t-1) so neither exp underflows the
// quotient. eta(1) = 1, eta(2) = 0, C-infinity flat at both ends.
double eta_value(double t) {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    const double e = 1.0 / (2.0 - t) - 1.0 / (t - 1.0);
    if (e > 745.0) return 0.0;
    if (e < -745.0) return 1.0;
    return 1.0 / (1.0 + std::exp(e));
}

double eta_deriv(double t) {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const double e = 1.0 / (2.0 - t) - 1.0 / (t - 1.0);
    if (e > 709.0 || e < -709.0) return 0.0;
    const double s = 1.0 / (1.0 + std::exp(e));
    const double de = 1.0 / ((2.0 - t) * (2.0 - t)) + 1.0 / ((t - 1.0) * (t - 1.0));
    return -de * s * (1.0 - s);
}

}  // namespace

CutoffFunction make_cutoff(double R, CutoffShape shape) {
    if (!(R > 0.0)) throw std::invalid_argument("cutoff scale R must be positive");
    if (shape != CutoffShape::SmoothExp)
        throw std::invalid_argument("unknown cutoff shape");
    CutoffFunction c;
    c.R = R;
    c.c_eta = 2.0;  // |eta'| peaks at t = 3/2 where eta' = -psi'(1/2)/(2 psi(1/2)) = -2
    c.value = [R](double r) { return eta_value(r / R); };
    c.deriv = [R](double r) { return eta_deriv(r / R) / R; };
    return c;
}

}  // namespace liouville
