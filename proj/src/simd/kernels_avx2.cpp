// Compiled with -mavx2; only reached after a runtime CPUID check.
#include "ncis/simd.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>

namespace ncis::simd {

namespace {

using u64 = std::uint64_t;

// AVX2 has no 64x64 multiply; both halves are assembled from 32x32->64 products.
inline __m256i mul_lo64(__m256i a, __m256i b) {
    const __m256i a_hi = _mm256_srli_epi64(a, 32);
    const __m256i b_hi = _mm256_srli_epi64(b, 32);
    const __m256i lo = _mm256_mul_epu32(a, b);
    const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(a_hi, b), _mm256_mul_epu32(a, b_hi));
    return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mul_hi64(__m256i a, __m256i b) {
    const __m256i mask = _mm256_set1_epi64x(0xffffffffLL);
    const __m256i a_hi = _mm256_srli_epi64(a, 32);
    const __m256i b_hi = _mm256_srli_epi64(b, 32);
    const __m256i ll = _mm256_mul_epu32(a, b);
    const __m256i lh = _mm256_mul_epu32(a, b_hi);
    const __m256i hl = _mm256_mul_epu32(a_hi, b);
    const __m256i hh = _mm256_mul_epu32(a_hi, b_hi);
    const __m256i mid = _mm256_add_epi64(_mm256_add_epi64(_mm256_srli_epi64(ll, 32), _mm256_and_si256(lh, mask)),
                                         _mm256_and_si256(hl, mask));
    return _mm256_add_epi64(_mm256_add_epi64(hh, _mm256_srli_epi64(lh, 32)),
                            _mm256_add_epi64(_mm256_srli_epi64(hl, 32), _mm256_srli_epi64(mid, 32)));
}

// v in [0, 2p) with 2p < 2^63: subtract p unless that goes negative.
inline __m256i reduce_once(__m256i v, __m256i p) {
    const __m256i t = _mm256_sub_epi64(v, p);
    return _mm256_castpd_si256(
        _mm256_blendv_pd(_mm256_castsi256_pd(t), _mm256_castsi256_pd(v), _mm256_castsi256_pd(t)));
}

inline __m256i mul_shoup(__m256i x, __m256i c, __m256i cs, __m256i p) {
    const __m256i q = mul_hi64(x, cs);
    const __m256i r = _mm256_sub_epi64(mul_lo64(x, c), mul_lo64(q, p));
    return reduce_once(r, p);
}

inline u64 mul_shoup_scalar(u64 x, u64 c, u64 cs, u64 p) {
    const u64 q = static_cast<u64>((static_cast<unsigned __int128>(cs) * x) >> 64);
    const u64 r = c * x - q * p;
    return r >= p ? r - p : r;
}

void axpy_avx2(u64* y, const u64* x, std::size_t len, u64 c, u64 p) {
    const u64 cs = detail::shoup_quotient(c, p);
    const __m256i vc = _mm256_set1_epi64x(static_cast<long long>(c));
    const __m256i vcs = _mm256_set1_epi64x(static_cast<long long>(cs));
    const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(p));
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        const __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
        const __m256i s = _mm256_add_epi64(vy, mul_shoup(vx, vc, vcs, vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), reduce_once(s, vp));
    }
    for (; i < len; ++i) {
        const u64 s = y[i] + mul_shoup_scalar(x[i], c, cs, p);
        y[i] = s >= p ? s - p : s;
    }
}

void scale_avx2(u64* y, std::size_t len, u64 c, u64 p) {
    const u64 cs = detail::shoup_quotient(c, p);
    const __m256i vc = _mm256_set1_epi64x(static_cast<long long>(c));
    const __m256i vcs = _mm256_set1_epi64x(static_cast<long long>(cs));
    const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(p));
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), mul_shoup(vy, vc, vcs, vp));
    }
    for (; i < len; ++i) y[i] = mul_shoup_scalar(y[i], c, cs, p);
}

}  // namespace

extern const ModKernels kAvx2Kernels{Isa::avx2, "avx2", axpy_avx2, scale_avx2};

}  // namespace ncis::simd

#endif
