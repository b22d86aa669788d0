#include "liouville/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace liouville::kern {

namespace {

std::atomic<Lane> g_forced{Lane::Auto};

bool detect_avx2() {
#if defined(LIOUVILLE_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

inline Lane effective_lane() {
    static const bool has_avx2 = detect_avx2();
    const Lane forced = g_forced.load(std::memory_order_relaxed);
    if (forced != Lane::Auto) return forced;
    return has_avx2 ? Lane::Avx2 : Lane::Scalar;
}

}  // namespace

bool avx2_available() {
    static const bool has = detect_avx2();
    return has;
}

void force_lane(Lane lane) {
    if (lane == Lane::Avx2 && !avx2_available())
        throw std::runtime_error("kernel lane avx2 is not available on this cpu");
    g_forced.store(lane, std::memory_order_relaxed);
}

Lane active_lane() { return effective_lane(); }

std::string_view lane_name(Lane lane) {
    switch (lane) {
        case Lane::Auto: return "auto";
        case Lane::Scalar: return "scalar";
        case Lane::Avx2: return "avx2";
    }
    return "?";
}

void pow_pos(const double* t, std::size_t n, double e, double* out) {
#ifdef LIOUVILLE_HAVE_AVX2
    if (effective_lane() == Lane::Avx2) return avx2::pow_pos(t, n, e, out);
#endif
    scalar::pow_pos(t, n, e, out);
}

void plap_pair(double p, int dim, std::size_t n,
               const double* const* xi1, const double* const* xi2,
               const double* weight, double* pairing, double* dasq) {
#ifdef LIOUVILLE_HAVE_AVX2
    if (effective_lane() == Lane::Avx2)
        return avx2::plap_pair(p, dim, n, xi1, xi2, weight, pairing, dasq);
#endif
    scalar::plap_pair(p, dim, n, xi1, xi2, weight, pairing, dasq);
}

void mplap_pair(double p, int dim, std::size_t n,
                const double* const* xi1, const double* const* xi2,
                double* pairing, double* dasq) {
#ifdef LIOUVILLE_HAVE_AVX2
    if (effective_lane() == Lane::Avx2)
        return avx2::mplap_pair(p, dim, n, xi1, xi2, pairing, dasq);
#endif
    scalar::mplap_pair(p, dim, n, xi1, xi2, pairing, dasq);
}

void power_profile(double k, const PowerTerm* terms, int nterms,
                   const double* r, std::size_t n, double* val, double* dval) {
#ifdef LIOUVILLE_HAVE_AVX2
    if (effective_lane() == Lane::Avx2)
        return avx2::power_profile(k, terms, nterms, r, n, val, dval);
#endif
    scalar::power_profile(k, terms, nterms, r, n, val, dval);
}

}  // namespace liouville::kern
