#include "visus/kernels.hpp"

#include <algorithm>
#include <cstdlib>

namespace visus::kernels {
namespace {

void and_mask_scalar(uint8_t* dst, const uint8_t* src, uint8_t mask, size_t n) {
    for (size_t i = 0; i < n; ++i) dst[i] = src[i] & mask;
}

void or_into_scalar(uint8_t* dst, const uint8_t* src, size_t n) {
    for (size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

DiffStats diff_stats_scalar(const uint8_t* a, const uint8_t* b, size_t n) {
    DiffStats st;
    for (size_t i = 0; i < n; ++i) {
        const unsigned d = a[i] > b[i] ? unsigned(a[i] - b[i]) : unsigned(b[i] - a[i]);
        st.max_abs = std::max<uint8_t>(st.max_abs, static_cast<uint8_t>(d));
        st.sum_abs += d;
        st.sum_sq += uint64_t(d) * d;
    }
    return st;
}

uint64_t sum_scalar(const uint8_t* p, size_t n) {
    uint64_t s = 0;
    for (size_t i = 0; i < n; ++i) s += p[i];
    return s;
}

uint64_t sum_squares_scalar(const uint8_t* p, size_t n) {
    uint64_t s = 0;
    for (size_t i = 0; i < n; ++i) s += uint64_t(p[i]) * p[i];
    return s;
}

uint64_t dot_scalar(const uint8_t* a, const uint8_t* b, size_t n) {
    uint64_t s = 0;
    for (size_t i = 0; i < n; ++i) s += uint64_t(a[i]) * b[i];
    return s;
}

void rgb_below_scalar(const uint8_t* rgb, size_t pixel_count, uint8_t threshold, uint8_t* out) {
    for (size_t i = 0; i < pixel_count; ++i) {
        const uint8_t* px = rgb + 3 * i;
        out[i] = (px[0] < threshold && px[1] < threshold && px[2] < threshold) ? 1 : 0;
    }
}

}  // namespace

const Ops& scalar() {
    static const Ops ops{
        "scalar",          and_mask_scalar,    or_into_scalar, diff_stats_scalar,
        sum_scalar,        sum_squares_scalar, dot_scalar,     rgb_below_scalar,
    };
    return ops;
}

}  // namespace visus::kernels
