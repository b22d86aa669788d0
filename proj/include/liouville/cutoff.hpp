#pragma once

#include <functional>

// Smooth radial cutoff: 1 on [0, R], 0 beyond 2R, all derivatives vanishing
// at both ends of the transition. Realizes the non-negative compactly
// supported test functions of the weak formulation.

namespace liouville {

enum class CutoffShape { SmoothExp };

struct CutoffFunction {
    double R = 1.0;
    // sup_t |eta'(t)| of the transition shape, so |deriv| <= c_eta / R
    double c_eta = 2.0;
    std::function<double(double)> value;  // r -> [0, 1]
    std::function<double(double)> deriv;
};

CutoffFunction make_cutoff(double R, CutoffShape shape = CutoffShape::SmoothExp);

}  // namespace liouville
