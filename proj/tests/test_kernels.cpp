#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "visus/kernels.hpp"

using visus::kernels::DiffStats;
using visus::kernels::Ops;

namespace {

// Sizes chosen to hit the empty case, the scalar tail, full vectors, the
// 32-pixel carrier blocks, and the 128 KiB madd flush boundary.
const std::vector<size_t> kSizes = {0,  1,  2,   3,   5,   31,  32,   33,   63,     64,     65,
                                    95, 96, 97,  98,  127, 128, 255,  256,  1000,   4096,
                                    131071, 131072, 131073, 262144, 262177};

std::vector<uint8_t> random_buf(std::mt19937& rng, size_t n) {
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<uint8_t> out(n);
    for (auto& v : out) v = static_cast<uint8_t>(byte(rng));
    return out;
}

}  // namespace

TEST_CASE("scalar kernels match a naive reference") {
    std::mt19937 rng(7);
    const Ops& k = visus::kernels::scalar();
    for (size_t n : {size_t(0), size_t(1), size_t(37), size_t(1000)}) {
        const auto a = random_buf(rng, n);
        const auto b = random_buf(rng, n);

        uint64_t sum = 0, sum_sq = 0, dot = 0, sum_abs = 0, sum_sq_d = 0;
        uint8_t max_abs = 0;
        for (size_t i = 0; i < n; ++i) {
            sum += a[i];
            sum_sq += uint64_t(a[i]) * a[i];
            dot += uint64_t(a[i]) * b[i];
            const int d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
            sum_abs += d;
            sum_sq_d += uint64_t(d) * d;
            if (d > max_abs) max_abs = static_cast<uint8_t>(d);
        }

        CHECK(k.sum(a.data(), n) == sum);
        CHECK(k.sum_squares(a.data(), n) == sum_sq);
        CHECK(k.dot(a.data(), b.data(), n) == dot);
        const DiffStats st = k.diff_stats(a.data(), b.data(), n);
        CHECK(st.max_abs == max_abs);
        CHECK(st.sum_abs == sum_abs);
        CHECK(st.sum_sq == sum_sq_d);
    }
}

TEST_CASE("avx2 kernels match scalar bit-exactly") {
    if (!visus::kernels::cpu_supports_avx2() || !visus::kernels::avx2()) {
        MESSAGE("AVX2 unavailable; skipping equivalence checks");
        return;
    }
    const Ops& s = visus::kernels::scalar();
    const Ops& v = *visus::kernels::avx2();
    std::mt19937 rng(11);

    for (size_t n : kSizes) {
        CAPTURE(n);
        auto a = random_buf(rng, n);
        auto b = random_buf(rng, n);

        std::vector<uint8_t> out_s(n), out_v(n);
        s.and_mask(out_s.data(), a.data(), 0xB6, n);
        v.and_mask(out_v.data(), a.data(), 0xB6, n);
        CHECK(out_s == out_v);

        out_s = b;
        out_v = b;
        s.or_into(out_s.data(), a.data(), n);
        v.or_into(out_v.data(), a.data(), n);
        CHECK(out_s == out_v);

        const DiffStats ds = s.diff_stats(a.data(), b.data(), n);
        const DiffStats dv = v.diff_stats(a.data(), b.data(), n);
        CHECK(ds.max_abs == dv.max_abs);
        CHECK(ds.sum_abs == dv.sum_abs);
        CHECK(ds.sum_sq == dv.sum_sq);

        CHECK(s.sum(a.data(), n) == v.sum(a.data(), n));
        CHECK(s.sum_squares(a.data(), n) == v.sum_squares(a.data(), n));
        CHECK(s.dot(a.data(), b.data(), n) == v.dot(a.data(), b.data(), n));
    }
}

TEST_CASE("avx2 kernels handle extreme buffers") {
    if (!visus::kernels::cpu_supports_avx2() || !visus::kernels::avx2()) return;
    const Ops& s = visus::kernels::scalar();
    const Ops& v = *visus::kernels::avx2();

    for (size_t n : {size_t(96), size_t(4096)}) {
        const std::vector<uint8_t> zeros(n, 0x00);
        const std::vector<uint8_t> ones(n, 0xFF);
        const DiffStats ds = s.diff_stats(zeros.data(), ones.data(), n);
        const DiffStats dv = v.diff_stats(zeros.data(), ones.data(), n);
        CHECK(ds.max_abs == 255);
        CHECK(ds.sum_abs == dv.sum_abs);
        CHECK(ds.sum_sq == uint64_t(n) * 255 * 255);
        CHECK(ds.sum_sq == dv.sum_sq);
        CHECK(s.sum_squares(ones.data(), n) == v.sum_squares(ones.data(), n));
    }
}

TEST_CASE("rgb_below equivalence and semantics") {
    const Ops& s = visus::kernels::scalar();
    const Ops* v = visus::kernels::cpu_supports_avx2() ? visus::kernels::avx2() : nullptr;
    std::mt19937 rng(13);

    for (size_t px : {size_t(0), size_t(1), size_t(31), size_t(32), size_t(33), size_t(34),
                      size_t(65), size_t(66), size_t(100), size_t(1000)}) {
        for (uint8_t threshold : {uint8_t(0), uint8_t(1), uint8_t(40), uint8_t(128), uint8_t(255)}) {
            CAPTURE(px);
            CAPTURE(int(threshold));
            // cluster values around small thresholds so matches actually occur
            std::uniform_int_distribution<int> byte(0, 90);
            std::vector<uint8_t> rgb(px * 3);
            for (auto& b : rgb) b = static_cast<uint8_t>(byte(rng));

            std::vector<uint8_t> expected(px);
            for (size_t i = 0; i < px; ++i)
                expected[i] = (rgb[3 * i] < threshold && rgb[3 * i + 1] < threshold &&
                               rgb[3 * i + 2] < threshold)
                                  ? 1
                                  : 0;

            std::vector<uint8_t> got_s(px, 0xEE);
            s.rgb_below(rgb.data(), px, threshold, got_s.data());
            CHECK(got_s == expected);

            if (v) {
                std::vector<uint8_t> got_v(px, 0xEE);
                v->rgb_below(rgb.data(), px, threshold, got_v.data());
                CHECK(got_v == expected);
            }
        }
    }
}

TEST_CASE("backend selection") {
    CHECK(visus::kernels::select("scalar"));
    CHECK(std::string(visus::kernels::active().name) == "scalar");

    CHECK_FALSE(visus::kernels::select("not-a-backend"));
    CHECK(std::string(visus::kernels::active().name) == "scalar");

    if (visus::kernels::cpu_supports_avx2() && visus::kernels::avx2()) {
        CHECK(visus::kernels::select("avx2"));
        CHECK(std::string(visus::kernels::active().name) == "avx2");
    }

    CHECK(visus::kernels::select("auto"));
    const std::string auto_name = visus::kernels::active().name;
    if (visus::kernels::cpu_supports_avx2() && visus::kernels::avx2()) {
        CHECK(auto_name == "avx2");
    } else {
        CHECK(auto_name == "scalar");
    }
}
