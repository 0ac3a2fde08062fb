// AVX2 kernel variants. This translation unit is compiled with -mavx2 and
// must only be reached through the dispatch table after a runtime CPU check.

#include "visus/kernels.hpp"

#if defined(VISUS_HAVE_AVX2) && defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cstring>

namespace visus::kernels {
namespace {

// Each iteration feeds an i32 accumulator lane two madd results (lo and
// hi halves), so a lane grows by at most 4 * 255^2 = 260100; 4096
// iterations stay well below 2^31, after which lanes drain to u64.
constexpr size_t kFlushIters = 4096;

inline __m256i loadu(const uint8_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void storeu(uint8_t* p, __m256i v) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

inline uint64_t hsum_u64(__m256i v) {
    alignas(32) uint64_t lane[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane), v);
    return lane[0] + lane[1] + lane[2] + lane[3];
}

inline uint64_t hsum_u32(__m256i v) {
    alignas(32) uint32_t lane[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane), v);
    uint64_t s = 0;
    for (uint32_t x : lane) s += x;
    return s;
}

void and_mask_avx2(uint8_t* dst, const uint8_t* src, uint8_t mask, size_t n) {
    const __m256i m = _mm256_set1_epi8(static_cast<char>(mask));
    size_t i = 0;
    for (; i + 32 <= n; i += 32) storeu(dst + i, _mm256_and_si256(loadu(src + i), m));
    for (; i < n; ++i) dst[i] = src[i] & mask;
}

void or_into_avx2(uint8_t* dst, const uint8_t* src, size_t n) {
    size_t i = 0;
    for (; i + 32 <= n; i += 32) storeu(dst + i, _mm256_or_si256(loadu(dst + i), loadu(src + i)));
    for (; i < n; ++i) dst[i] |= src[i];
}

DiffStats diff_stats_avx2(const uint8_t* a, const uint8_t* b, size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    __m256i vmax = zero;
    __m256i sad_acc = zero;  // 4 x u64
    uint64_t sum_sq = 0;
    size_t i = 0;
    while (i + 32 <= n) {
        const size_t iters = std::min((n - i) / 32, kFlushIters);
        __m256i sq_acc = zero;  // 8 x i32
        for (size_t k = 0; k < iters; ++k, i += 32) {
            const __m256i va = loadu(a + i);
            const __m256i vb = loadu(b + i);
            const __m256i d = _mm256_or_si256(_mm256_subs_epu8(va, vb), _mm256_subs_epu8(vb, va));
            vmax = _mm256_max_epu8(vmax, d);
            sad_acc = _mm256_add_epi64(sad_acc, _mm256_sad_epu8(va, vb));
            const __m256i lo = _mm256_unpacklo_epi8(d, zero);
            const __m256i hi = _mm256_unpackhi_epi8(d, zero);
            sq_acc = _mm256_add_epi32(sq_acc, _mm256_madd_epi16(lo, lo));
            sq_acc = _mm256_add_epi32(sq_acc, _mm256_madd_epi16(hi, hi));
        }
        sum_sq += hsum_u32(sq_acc);
    }

    DiffStats st;
    alignas(32) uint8_t mx[32];
    _mm256_store_si256(reinterpret_cast<__m256i*>(mx), vmax);
    for (uint8_t v : mx) st.max_abs = std::max(st.max_abs, v);
    st.sum_abs = hsum_u64(sad_acc);
    st.sum_sq = sum_sq;

    for (; i < n; ++i) {
        const unsigned d = a[i] > b[i] ? unsigned(a[i] - b[i]) : unsigned(b[i] - a[i]);
        st.max_abs = std::max<uint8_t>(st.max_abs, static_cast<uint8_t>(d));
        st.sum_abs += d;
        st.sum_sq += uint64_t(d) * d;
    }
    return st;
}

uint64_t sum_avx2(const uint8_t* p, size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = zero;
    size_t i = 0;
    for (; i + 32 <= n; i += 32)
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(loadu(p + i), zero));
    uint64_t s = hsum_u64(acc);
    for (; i < n; ++i) s += p[i];
    return s;
}

uint64_t dot_avx2(const uint8_t* a, const uint8_t* b, size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    uint64_t total = 0;
    size_t i = 0;
    while (i + 32 <= n) {
        const size_t iters = std::min((n - i) / 32, kFlushIters);
        __m256i acc = zero;  // 8 x i32
        for (size_t k = 0; k < iters; ++k, i += 32) {
            const __m256i va = loadu(a + i);
            const __m256i vb = loadu(b + i);
            acc = _mm256_add_epi32(
                acc, _mm256_madd_epi16(_mm256_unpacklo_epi8(va, zero), _mm256_unpacklo_epi8(vb, zero)));
            acc = _mm256_add_epi32(
                acc, _mm256_madd_epi16(_mm256_unpackhi_epi8(va, zero), _mm256_unpackhi_epi8(vb, zero)));
        }
        total += hsum_u32(acc);
    }
    for (; i < n; ++i) total += uint64_t(a[i]) * b[i];
    return total;
}

uint64_t sum_squares_avx2(const uint8_t* p, size_t n) { return dot_avx2(p, p, n); }

void rgb_below_avx2(const uint8_t* rgb, size_t pixel_count, uint8_t threshold, uint8_t* out) {
    if (pixel_count == 0) return;
    if (threshold == 0) {
        std::memset(out, 0, pixel_count);
        return;
    }
    // byte < threshold  <=>  saturating (byte - (threshold - 1)) == 0
    const __m256i t = _mm256_set1_epi8(static_cast<char>(threshold - 1));
    const __m256i zero = _mm256_setzero_si256();
    alignas(32) uint8_t triple_lt[96];

    size_t p = 0;
    // A 32-pixel block reads bytes [3p, 3p+97], so stop one block early and
    // let the scalar tail cover the rest.
    while (p + 33 <= pixel_count) {
        const uint8_t* base = rgb + 3 * p;
        for (int v = 0; v < 3; ++v) {
            const __m256i x0 = loadu(base + 32 * v);
            const __m256i x1 = loadu(base + 32 * v + 1);
            const __m256i x2 = loadu(base + 32 * v + 2);
            const __m256i m = _mm256_and_si256(
                _mm256_cmpeq_epi8(_mm256_subs_epu8(x0, t), zero),
                _mm256_and_si256(_mm256_cmpeq_epi8(_mm256_subs_epu8(x1, t), zero),
                                 _mm256_cmpeq_epi8(_mm256_subs_epu8(x2, t), zero)));
            _mm256_store_si256(reinterpret_cast<__m256i*>(triple_lt + 32 * v), m);
        }
        // triple_lt[j] covers bytes j..j+2; pixel k starts at byte 3k.
        for (int k = 0; k < 32; ++k) out[p + k] = triple_lt[3 * k] & 1;
        p += 32;
    }
    for (; p < pixel_count; ++p) {
        const uint8_t* px = rgb + 3 * p;
        out[p] = (px[0] < threshold && px[1] < threshold && px[2] < threshold) ? 1 : 0;
    }
}

}  // namespace

const Ops* avx2() {
    static const Ops ops{
        "avx2",   and_mask_avx2,    or_into_avx2, diff_stats_avx2,
        sum_avx2, sum_squares_avx2, dot_avx2,     rgb_below_avx2,
    };
    return &ops;
}

}  // namespace visus::kernels

#else

namespace visus::kernels {
const Ops* avx2() { return nullptr; }
}  // namespace visus::kernels

#endif
