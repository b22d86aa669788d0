#ifdef LIOUVILLE_HAVE_AVX2

#include "liouville/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstring>

// AVX2 lane. pow is built from a hand-vectorized log/exp pair; both stay
// within ~2e-15 relative of libm over the domains the checkers use, which
// the lane-equivalence tests pin down. Special exponents (0, 1, 2) are
// handled exactly so that the p = 2 identity flux stays bit-exact.

namespace liouville::kern::avx2 {

namespace {

constexpr int kMaxSimdDim = 16;

const __m256d kOne = _mm256_set1_pd(1.0);
const __m256d kHalf = _mm256_set1_pd(0.5);
const __m256d kZero = _mm256_setzero_pd();

// ---- vlog: natural log of strictly positive finite doubles ----

inline __m256d vlog(__m256d x) {
    const __m256d min_normal = _mm256_set1_pd(2.2250738585072014e-308);
    const __m256d two54 = _mm256_set1_pd(0x1p54);
    const __m256d denorm = _mm256_cmp_pd(x, min_normal, _CMP_LT_OQ);
    x = _mm256_blendv_pd(x, _mm256_mul_pd(x, two54), denorm);
    const __m256d kbias =
        _mm256_blendv_pd(kZero, _mm256_set1_pd(-54.0), denorm);

    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i expo = _mm256_srli_epi64(bits, 52);
    // gather the low 32 bits of each 64-bit lane -> int32x4 -> double
    const __m256i idx = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
    const __m128i expo32 =
        _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(expo, idx));
    __m256d ed = _mm256_cvtepi32_pd(expo32);
    ed = _mm256_add_pd(ed, _mm256_sub_pd(kbias, _mm256_set1_pd(1023.0)));

    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

    // keep m in (sqrt(1/2), sqrt(2)]
    const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
    const __m256d big = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, kHalf), big);
    ed = _mm256_add_pd(ed, _mm256_and_pd(big, kOne));

    // log(m) = 2 atanh(s), s = (m-1)/(m+1); series in z = s^2
    const __m256d s =
        _mm256_div_pd(_mm256_sub_pd(m, kOne), _mm256_add_pd(m, kOne));
    const __m256d z = _mm256_mul_pd(s, s);
    __m256d poly = _mm256_set1_pd(2.0 / 21.0);
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0 / 19.0));
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0 / 17.0));
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0 / 15.0));
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0 / 13.0));
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0 / 11.0));
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0 / 9.0));
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0 / 7.0));
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0 / 5.0));
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0 / 3.0));
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0));
    const __m256d logm = _mm256_mul_pd(s, poly);

    // ln2 split so that ed * LN2_HI is exact for |ed| < 2^20
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    const __m256d hi = _mm256_fmadd_pd(ed, ln2_hi, logm);
    return _mm256_fmadd_pd(ed, ln2_lo, hi);
}

// ---- vexp ----

inline __m256d vexp(__m256d x) {
    const __m256d overflow = _mm256_cmp_pd(x, _mm256_set1_pd(709.782712893384), _CMP_GT_OQ);
    const __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(-745.2), _CMP_LT_OQ);

    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d kd = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    __m256d r = _mm256_fnmadd_pd(kd, ln2_hi, x);
    r = _mm256_fnmadd_pd(kd, ln2_lo, r);

    // Taylor series for exp(r), |r| <= 0.347
    __m256d poly = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 479001600.0));
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 39916800.0));
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 3628800.0));
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 362880.0));
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 40320.0));
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 5040.0));
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 720.0));
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 120.0));
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 24.0));
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 6.0));
    poly = _mm256_fmadd_pd(poly, r, kHalf);
    poly = _mm256_fmadd_pd(poly, r, kOne);
    poly = _mm256_fmadd_pd(poly, r, kOne);

    // scale by 2^k in two halves so subnormal/overflow edges stay graceful
    __m128i ki = _mm256_cvtpd_epi32(kd);
    ki = _mm_max_epi32(_mm_min_epi32(ki, _mm_set1_epi32(1200)), _mm_set1_epi32(-1200));
    const __m128i k1 = _mm_srai_epi32(ki, 1);
    const __m128i k2 = _mm_sub_epi32(ki, k1);
    const __m128i bias = _mm_set1_epi32(1023);
    const __m256d s1 = _mm256_castsi256_pd(
        _mm256_slli_epi64(_mm256_cvtepi32_epi64(_mm_add_epi32(k1, bias)), 52));
    const __m256d s2 = _mm256_castsi256_pd(
        _mm256_slli_epi64(_mm256_cvtepi32_epi64(_mm_add_epi32(k2, bias)), 52));
    __m256d y = _mm256_mul_pd(_mm256_mul_pd(poly, s1), s2);

    y = _mm256_blendv_pd(y, _mm256_set1_pd(HUGE_VAL), overflow);
    y = _mm256_blendv_pd(y, kZero, underflow);
    return y;
}

// t^e for t > 0, 0 otherwise (general exponent path)
inline __m256d vpow_pos_general(__m256d t, __m256d e) {
    const __m256d pos = _mm256_cmp_pd(t, kZero, _CMP_GT_OQ);
    const __m256d safe = _mm256_blendv_pd(kOne, t, pos);
    const __m256d y = vexp(_mm256_mul_pd(e, vlog(safe)));
    return _mm256_and_pd(y, pos);
}

inline __m256d load4(const double* p) { return _mm256_loadu_pd(p); }

}  // namespace

void pow_pos(const double* t, std::size_t n, double e, double* out) {
    const __m256d ev = _mm256_set1_pd(e);
    std::size_t i = 0;
    auto block = [&](__m256d tv) -> __m256d {
        const __m256d pos = _mm256_cmp_pd(tv, kZero, _CMP_GT_OQ);
        if (e == 0.0) return _mm256_and_pd(kOne, pos);
        if (e == 1.0) return _mm256_and_pd(tv, pos);
        if (e == 2.0) return _mm256_and_pd(_mm256_mul_pd(tv, tv), pos);
        return vpow_pos_general(tv, ev);
    };
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, block(load4(t + i)));
    if (i < n) {
        double tb[4] = {1, 1, 1, 1}, ob[4];
        std::memcpy(tb, t + i, (n - i) * sizeof(double));
        _mm256_storeu_pd(ob, block(_mm256_loadu_pd(tb)));
        std::memcpy(out + i, ob, (n - i) * sizeof(double));
    }
}

void plap_pair(double p, int dim, std::size_t n,
               const double* const* xi1, const double* const* xi2,
               const double* weight, double* pairing, double* dasq) {
    if (dim > kMaxSimdDim) {
        scalar::plap_pair(p, dim, n, xi1, xi2, weight, pairing, dasq);
        return;
    }
    const bool identity = (p == 2.0);
    const __m256d half_pm2 = _mm256_set1_pd(0.5 * (p - 2.0));

    auto block = [&](std::size_t i, const double* const* a1, const double* const* a2,
                     const double* w, double* pr_out, double* da_out) {
        __m256d m1 = kZero, m2 = kZero;
        for (int j = 0; j < dim; ++j) {
            const __m256d v1 = load4(a1[j] + i);
            const __m256d v2 = load4(a2[j] + i);
            m1 = _mm256_fmadd_pd(v1, v1, m1);
            m2 = _mm256_fmadd_pd(v2, v2, m2);
        }
        __m256d f1 = kOne, f2 = kOne;
        if (!identity) {
            f1 = vpow_pos_general(m1, half_pm2);
            f2 = vpow_pos_general(m2, half_pm2);
        }
        const __m256d wv = w ? load4(w + i) : kOne;
        __m256d pr = kZero, da = kZero;
        for (int j = 0; j < dim; ++j) {
            const __m256d v1 = load4(a1[j] + i);
            const __m256d v2 = load4(a2[j] + i);
            // plain mul + sub keeps the difference exactly antisymmetric
            // under swapping the arguments
            const __m256d aj = _mm256_mul_pd(
                wv, _mm256_sub_pd(_mm256_mul_pd(f1, v1), _mm256_mul_pd(f2, v2)));
            pr = _mm256_fmadd_pd(_mm256_sub_pd(v1, v2), aj, pr);
            da = _mm256_fmadd_pd(aj, aj, da);
        }
        _mm256_storeu_pd(pr_out, pr);
        _mm256_storeu_pd(da_out, da);
    };

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) block(i, xi1, xi2, weight, pairing + i, dasq + i);
    if (i < n) {
        const std::size_t tail = n - i;
        double b1[kMaxSimdDim][4] = {}, b2[kMaxSimdDim][4] = {}, bw[4] = {1, 1, 1, 1};
        const double* p1[kMaxSimdDim];
        const double* p2[kMaxSimdDim];
        for (int j = 0; j < dim; ++j) {
            std::memcpy(b1[j], xi1[j] + i, tail * sizeof(double));
            std::memcpy(b2[j], xi2[j] + i, tail * sizeof(double));
            p1[j] = b1[j];
            p2[j] = b2[j];
        }
        if (weight) std::memcpy(bw, weight + i, tail * sizeof(double));
        double pr[4], da[4];
        block(0, p1, p2, weight ? bw : nullptr, pr, da);
        std::memcpy(pairing + i, pr, tail * sizeof(double));
        std::memcpy(dasq + i, da, tail * sizeof(double));
    }
}

void mplap_pair(double p, int dim, std::size_t n,
                const double* const* xi1, const double* const* xi2,
                double* pairing, double* dasq) {
    if (dim > kMaxSimdDim) {
        scalar::mplap_pair(p, dim, n, xi1, xi2, pairing, dasq);
        return;
    }
    const bool identity = (p == 2.0);
    const __m256d pm1 = _mm256_set1_pd(p - 1.0);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);

    auto block = [&](std::size_t i, const double* const* a1, const double* const* a2,
                     double* pr_out, double* da_out) {
        __m256d pr = kZero, da = kZero;
        for (int j = 0; j < dim; ++j) {
            const __m256d s1 = load4(a1[j] + i);
            const __m256d s2 = load4(a2[j] + i);
            __m256d v1 = s1, v2 = s2;
            if (!identity) {
                const __m256d m1 = vpow_pos_general(_mm256_andnot_pd(sign_mask, s1), pm1);
                const __m256d m2 = vpow_pos_general(_mm256_andnot_pd(sign_mask, s2), pm1);
                v1 = _mm256_or_pd(m1, _mm256_and_pd(sign_mask, s1));
                v2 = _mm256_or_pd(m2, _mm256_and_pd(sign_mask, s2));
            }
            const __m256d aj = _mm256_sub_pd(v1, v2);
            pr = _mm256_fmadd_pd(_mm256_sub_pd(s1, s2), aj, pr);
            da = _mm256_fmadd_pd(aj, aj, da);
        }
        _mm256_storeu_pd(pr_out, pr);
        _mm256_storeu_pd(da_out, da);
    };

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) block(i, xi1, xi2, pairing + i, dasq + i);
    if (i < n) {
        const std::size_t tail = n - i;
        double b1[kMaxSimdDim][4] = {}, b2[kMaxSimdDim][4] = {};
        const double* p1[kMaxSimdDim];
        const double* p2[kMaxSimdDim];
        for (int j = 0; j < dim; ++j) {
            std::memcpy(b1[j], xi1[j] + i, tail * sizeof(double));
            std::memcpy(b2[j], xi2[j] + i, tail * sizeof(double));
            p1[j] = b1[j];
            p2[j] = b2[j];
        }
        double pr[4], da[4];
        block(0, p1, p2, pr, da);
        std::memcpy(pairing + i, pr, tail * sizeof(double));
        std::memcpy(dasq + i, da, tail * sizeof(double));
    }
}

void power_profile(double k, const PowerTerm* terms, int nterms,
                   const double* r, std::size_t n, double* val, double* dval) {
    const __m256d kv = _mm256_set1_pd(k);
    auto block = [&](__m256d rv, double* vo, double* dvo) {
        const __m256d rk = vpow_pos_general(rv, kv);
        const __m256d b = _mm256_add_pd(kOne, rk);
        const __m256d lnb = vlog(b);
        __m256d rkm1 = kZero;
        if (dvo) rkm1 = vpow_pos_general(rv, _mm256_set1_pd(k - 1.0));
        __m256d v = kZero, dv = kZero;
        for (int t = 0; t < nterms; ++t) {
            const __m256d e = _mm256_set1_pd(terms[t].expo);
            const __m256d be = vexp(_mm256_mul_pd(e, lnb));
            v = _mm256_fmadd_pd(_mm256_set1_pd(terms[t].coef), be, v);
            if (dvo) {
                const __m256d bem1 =
                    vexp(_mm256_mul_pd(_mm256_set1_pd(terms[t].expo - 1.0), lnb));
                const __m256d cf =
                    _mm256_set1_pd(terms[t].coef * terms[t].expo * k);
                dv = _mm256_fmadd_pd(cf, _mm256_mul_pd(bem1, rkm1), dv);
            }
        }
        if (vo) _mm256_storeu_pd(vo, v);
        if (dvo) _mm256_storeu_pd(dvo, dv);
    };

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        block(load4(r + i), val ? val + i : nullptr, dval ? dval + i : nullptr);
    if (i < n) {
        const std::size_t tail = n - i;
        double rb[4] = {1, 1, 1, 1}, vb[4], db[4];
        std::memcpy(rb, r + i, tail * sizeof(double));
        block(_mm256_loadu_pd(rb), vb, db);
        if (val) std::memcpy(val + i, vb, tail * sizeof(double));
        if (dval) std::memcpy(dval + i, db, tail * sizeof(double));
    }
}

}  // namespace liouville::kern::avx2

#endif  // LIOUVILLE_HAVE_AVX2
