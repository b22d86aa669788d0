#pragma once

#include <cstddef>
#include <string_view>

// Batch kernels for the data-parallel inner loops: elementwise powers,
// flux pairings for the built-in operator families, and radial profile
// evaluation. Every kernel exists as a scalar reference implementation
// (libm) and, on x86-64, as an AVX2 variant selected at runtime. The two
// lanes are equivalence-tested; all downstream tolerances leave several
// orders of magnitude of headroom over the cross-lane difference.

namespace liouville::kern {

enum class Lane { Auto, Scalar, Avx2 };

bool avx2_available();
// Force a lane for all subsequent kernel calls (throws std::runtime_error
// if the lane is not available on this machine). Lane::Auto restores
// runtime detection.
void force_lane(Lane lane);
Lane active_lane();
std::string_view lane_name(Lane lane);

// One term coef * (1 + r^k)^expo of a radial profile.
struct PowerTerm {
    double coef;
    double expo;
};

// out[i] = t[i]^e for t[i] > 0; 0 for t[i] <= 0 (1 if e == 0 and t[i] > 0).
void pow_pos(const double* t, std::size_t n, double e, double* out);

// Isotropic p-Laplacian flux pairing over a batch of gradient pairs.
// xi1, xi2 are structure-of-arrays: xi1[j][i] is component j of sample i.
// weight (nullable) multiplies the flux of both arguments, as in the
// weighted operator a(x)|xi|^{p-2} xi evaluated at the sample's x.
//   pairing[i] = sum_j (xi1_j - xi2_j) (A_j(xi1) - A_j(xi2))
//   dasq[i]    = sum_j (A_j(xi1) - A_j(xi2))^2
void plap_pair(double p, int dim, std::size_t n,
               const double* const* xi1, const double* const* xi2,
               const double* weight, double* pairing, double* dasq);

// Same contract for the coordinate-wise modification A_j(xi) = |xi_j|^{p-2} xi_j.
void mplap_pair(double p, int dim, std::size_t n,
                const double* const* xi1, const double* const* xi2,
                double* pairing, double* dasq);

// val[i]  = sum_t coef_t * B^expo_t,                      B = 1 + r[i]^k
// dval[i] = sum_t coef_t * expo_t * B^(expo_t-1) * k * r[i]^(k-1)
// Either output may be null. Requires k > 1 so that dval(0) = 0.
void power_profile(double k, const PowerTerm* terms, int nterms,
                   const double* r, std::size_t n, double* val, double* dval);

namespace scalar {
void pow_pos(const double* t, std::size_t n, double e, double* out);
void plap_pair(double p, int dim, std::size_t n,
               const double* const* xi1, const double* const* xi2,
               const double* weight, double* pairing, double* dasq);
void mplap_pair(double p, int dim, std::size_t n,
                const double* const* xi1, const double* const* xi2,
                double* pairing, double* dasq);
void power_profile(double k, const PowerTerm* terms, int nterms,
                   const double* r, std::size_t n, double* val, double* dval);
}  // namespace scalar

#ifdef LIOUVILLE_HAVE_AVX2
namespace avx2 {
void pow_pos(const double* t, std::size_t n, double e, double* out);
void plap_pair(double p, int dim, std::size_t n,
               const double* const* xi1, const double* const* xi2,
               const double* weight, double* pairing, double* dasq);
void mplap_pair(double p, int dim, std::size_t n,
                const double* const* xi1, const double* const* xi2,
                double* pairing, double* dasq);
void power_profile(double k, const PowerTerm* terms, int nterms,
                   const double* r, std::size_t n, double* val, double* dval);
}  // namespace avx2
#endif

}  // namespace liouville::kern
