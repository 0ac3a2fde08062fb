#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Byte-array kernels behind the pixel loops: share masking, OR
// reconstruction, the carrier predicate, and the integer reductions the
// distortion metrics are built from. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant selected at runtime.
// All reductions accumulate in unsigned 64-bit integers, so results are
// exact and independent of evaluation order.

namespace visus::kernels {

struct DiffStats {
    uint8_t max_abs = 0;    // max |a[i] - b[i]|
    uint64_t sum_abs = 0;   // sum |a[i] - b[i]|
    uint64_t sum_sq = 0;    // sum (a[i] - b[i])^2
};

struct Ops {
    const char* name;

    // dst[i] = src[i] & mask
    void (*and_mask)(uint8_t* dst, const uint8_t* src, uint8_t mask, size_t n);
    // dst[i] |= src[i]
    void (*or_into)(uint8_t* dst, const uint8_t* src, size_t n);

    DiffStats (*diff_stats)(const uint8_t* a, const uint8_t* b, size_t n);
    uint64_t (*sum)(const uint8_t* p, size_t n);
    uint64_t (*sum_squares)(const uint8_t* p, size_t n);
    uint64_t (*dot)(const uint8_t* a, const uint8_t* b, size_t n);

    // out[i] = 1 iff rgb[3i], rgb[3i+1], rgb[3i+2] are all < threshold
    void (*rgb_below)(const uint8_t* rgb, size_t pixel_count, uint8_t threshold, uint8_t* out);
};

const Ops& scalar();
const Ops* avx2();  // nullptr when not compiled in

bool cpu_supports_avx2();

// Active backend. First use honors VISUS_SIMD (scalar|avx2|auto); defaults
// to the fastest supported backend.
const Ops& active();

// Returns false (leaving the selection unchanged) if the requested backend
// is unavailable. "auto" always succeeds.
bool select(std::string_view backend);

}  // namespace visus::kernels
