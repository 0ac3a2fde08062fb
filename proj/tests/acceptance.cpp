// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Everything runs on deterministic seeds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "visus/metrics.hpp"
#include "visus/shares.hpp"
#include "visus/stego.hpp"

using visus::RasterImage;
namespace shares = visus::shares;
namespace stego = visus::stego;
namespace metrics = visus::metrics;

namespace {

int g_failures = 0;

struct Criterion {
    const char* label;
    std::string detail;
    bool ok = true;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Criterion(const char* l) : label(l) {}

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    void report() {
        const double secs = seconds();
        std::printf("%s  %s (%.3f s)%s%s\n", ok ? "PASS" : "FAIL", label, secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++g_failures;
    }
};

RasterImage random_stego(std::mt19937& rng, int w, int h) {
    const RasterImage cover = testutil::cover_with_carriers(rng, w, h, 100, 5);
    const size_t cap = stego::capacity_bytes(cover);
    return stego::embed(cover, testutil::random_bytes(rng, std::min<size_t>(cap, 16)));
}

// 1. Every subset of size >= 4 has union mask 0xFF and reconstructs a
//    random 64x64 stego image channel-exactly; 35/35 quads pass and
//    exactly 7 of 35 triples fail. Runtime < 1 s.
void criterion_threshold_guarantee() {
    Criterion c("1. threshold guarantee (all size>=4 subsets complete; 7/35 triples fail)");
    std::mt19937 rng(101);
    const RasterImage img = random_stego(rng, 64, 64);
    const auto parts = shares::make_shares(img);

    size_t quads = 0, quads_ok = 0, triples = 0, triples_bad = 0;
    for (const auto& report : shares::verify_threshold()) {
        const size_t size = report.members.size();
        if (size >= 4) {
            c.expect(report.complete,
                     "subset of size " + std::to_string(size) + " incomplete");
            std::vector<shares::Share> subset;
            for (int idx : report.members) subset.push_back(parts[idx - 1]);
            const auto [rec, rec_report] = shares::reconstruct(subset);
            c.expect(rec_report.complete == report.complete, "reconstruct report disagrees");
            if (size == 4) {
                ++quads;
                if (rec == img) ++quads_ok;
            } else {
                c.expect(rec == img, "size-" + std::to_string(size) + " reconstruction differs");
            }
        } else if (size == 3) {
            ++triples;
            if (!report.complete) ++triples_bad;
        }
    }
    c.expect(quads == 35 && quads_ok == 35,
             "quads " + std::to_string(quads_ok) + "/" + std::to_string(quads));
    c.expect(triples == 35 && triples_bad == 7,
             "failing triples " + std::to_string(triples_bad) + "/35");
    c.expect(c.seconds() < 1.0, "runtime exceeded 1 s");
    c.report();
}

// 2. OR of all 7 shares equals the stego image bit-exactly on 100 random
//    images.
void criterion_lossless_reconstruction() {
    Criterion c("2. lossless reconstruction from all 7 shares (100 random images)");
    std::mt19937 rng(103);
    for (int i = 0; i < 100; ++i) {
        std::uniform_int_distribution<int> dim(1, 48);
        const RasterImage img = testutil::random_image(rng, dim(rng), dim(rng));
        const auto parts = shares::make_shares(img);
        const auto [rec, report] = shares::reconstruct(parts);
        c.expect(report.complete, "union of all 7 masks not 0xFF");
        c.expect(rec == img, "reconstruction differs at iteration " + std::to_string(i));
        if (!c.ok) break;
    }
    c.report();
}

// 3. extract(embed(cover, p)) == p for 200 random pairs, including empty,
//    1-byte and max-capacity payloads and pattern-collision covers.
void criterion_stego_roundtrip() {
    Criterion c("3. stego roundtrip on 200 random (cover, payload) pairs");
    std::mt19937 rng(107);
    for (int i = 0; i < 200; ++i) {
        const size_t carriers = 8 + rng() % 300;
        const size_t collisions = rng() % 12;
        std::uniform_int_distribution<int> dim(20, 40);
        const RasterImage cover =
            testutil::cover_with_carriers(rng, dim(rng), dim(rng), carriers, collisions);
        const size_t cap = stego::capacity_bytes(cover);

        size_t len = 0;
        switch (i % 4) {
            case 0: len = 0; break;
            case 1: len = cap ? 1 : 0; break;
            case 2: len = cap; break;
            default: len = cap ? rng() % (cap + 1) : 0; break;
        }
        const auto payload = testutil::random_bytes(rng, len);
        const auto back = stego::extract(stego::embed(cover, payload));
        c.expect(back == payload, "payload mismatch at iteration " + std::to_string(i));
        if (!c.ok) break;
    }
    c.report();
}

// 4. Per-channel max difference of every generated (cover, stego) pair is
//    at most 43.
void criterion_distortion_bound() {
    Criterion c("4. distortion bound: per-channel max difference <= 43");
    std::mt19937 rng(109);
    for (int i = 0; i < 50; ++i) {
        const RasterImage cover =
            testutil::cover_with_carriers(rng, 32, 32, 60 + rng() % 200, rng() % 10);
        const auto payload = testutil::random_bytes(rng, stego::capacity_bytes(cover));
        const auto report = metrics::compute_metrics(cover, stego::embed(cover, payload));
        for (int ch = 0; ch < 3; ++ch)
            c.expect(report.channel(ch).max_difference <= 43,
                     "channel " + std::to_string(ch) + " exceeded 43");
        if (!c.ok) break;
    }
    c.report();
}

// 5. Metric identities: the published reference values are mutually
//    consistent under these definitions, and the identity suite holds to
//    1e-12 on random images.
void criterion_metric_identities() {
    Criterion c("5. metric identities (reference values + 1e-12 identity suite)");

    const double ref_snr[3] = {10141.2126245847, 9636.85465354654, 9877.27317934136};
    const double ref_nmse[3] = {9.86075370883913e-05, 0.00010376829743219, 0.000101242517225456};
    const double ref_if[3] = {0.999901392462912, 0.999896231702568, 0.999898757482775};

    const double product = ref_snr[0] * ref_nmse[0];
    c.expect(product > 0.999 && product < 1.001, "reference SNR*NMSE outside [0.999, 1.001]");
    for (int ch = 0; ch < 3; ++ch)
        c.expect(std::fabs(ref_if[ch] - (1.0 - ref_nmse[ch])) < 1e-8,
                 "reference IF != 1 - NMSE on channel " + std::to_string(ch));

    std::mt19937 rng(113);
    for (int i = 0; i < 20; ++i) {
        const RasterImage a = testutil::random_image(rng, 40, 25);
        RasterImage b = a;
        for (auto& byte : b.bytes())
            if ((rng() & 7) == 0) byte = static_cast<uint8_t>(rng());

        // independent accumulation for the cross-sum identities
        uint64_t sum_x[3] = {}, sum_x2[3] = {}, sum_xx[3] = {}, sum_sq[3] = {};
        const auto pa = a.bytes();
        const auto pb = b.bytes();
        for (size_t j = 0; j < pa.size(); ++j) {
            const int ch = static_cast<int>(j % 3);
            sum_x[ch] += pa[j];
            sum_x2[ch] += uint64_t(pa[j]) * pa[j];
            sum_xx[ch] += uint64_t(pa[j]) * pb[j];
            const int d = int(pa[j]) - int(pb[j]);
            sum_sq[ch] += uint64_t(d * d);
        }

        const auto report = metrics::compute_metrics(a, b);
        for (int ch = 0; ch < 3; ++ch) {
            const auto& m = report.channel(ch);
            c.expect(std::fabs((m.image_fidelity + m.nmse) - 1.0) < 1e-12, "IF + NMSE != 1");
            if (sum_sq[ch] > 0)
                c.expect(std::fabs(m.snr_linear * m.nmse - 1.0) < 1e-12, "SNR * NMSE != 1");
            c.expect(std::fabs(m.ncc * double(sum_x2[ch]) - double(sum_xx[ch])) <=
                         1e-12 * double(sum_xx[ch]),
                     "NCC * sum(x^2) != sum(x*x')");
            c.expect(std::fabs(m.correlation_quality * double(sum_x[ch]) - double(sum_xx[ch])) <=
                         1e-12 * double(sum_xx[ch]),
                     "CQ * sum(x) != sum(x*x')");
        }
        if (!c.ok) break;
    }
    c.report();
}

// 6. Every single share preserves the MSB plane of every channel exactly.
void criterion_msb_preservation() {
    Criterion c("6. every share preserves the MSB plane exactly");
    std::mt19937 rng(127);
    for (int i = 0; i < 20; ++i) {
        const RasterImage img = testutil::random_image(rng, 40, 30);
        for (const auto& share : shares::make_shares(img)) {
            const auto src = img.bytes();
            const auto dst = share.image.bytes();
            for (size_t j = 0; j < src.size(); ++j) {
                if ((dst[j] & 0x80) != (src[j] & 0x80)) {
                    c.expect(false, "share " + std::to_string(share.index) + " lost an MSB");
                    break;
                }
            }
        }
        if (!c.ok) break;
    }
    c.report();
}

// 7. End-to-end: embed "Steganography", share, reconstruct from shares
//    {2,3,5,7}, extract the exact message. Runtime < 1 s.
void criterion_end_to_end() {
    Criterion c("7. end-to-end embed/share/reconstruct{2,3,5,7}/extract");
    std::mt19937 rng(131);
    const RasterImage cover = testutil::cover_with_carriers(rng, 64, 64, 70, 4);
    c.expect(stego::find_carriers(cover).size() >= 60, "cover lacks 60 carriers");

    const std::string message = "Steganography";
    const std::vector<uint8_t> payload(message.begin(), message.end());
    const RasterImage stego_img = stego::embed(cover, payload);
    const auto parts = shares::make_shares(stego_img);

    std::vector<shares::Share> subset;
    for (int idx : {2, 3, 5, 7}) subset.push_back(parts[idx - 1]);
    const auto [rec, report] = shares::reconstruct(subset);
    c.expect(report.complete, "subset {2,3,5,7} reported incomplete");
    c.expect(rec == stego_img, "reconstruction differs from the stego image");

    const auto back = stego::extract(rec);
    c.expect(std::string(back.begin(), back.end()) == message, "extracted message differs");
    c.expect(c.seconds() < 1.0, "runtime exceeded 1 s");
    c.report();
}

// 8. Histograms conserve mass, and embedding only moves mass between the
//    cover's carrier-value bins and bins 39..44.
void criterion_histogram_conservation() {
    Criterion c("8. histogram conservation and localized stego changes");
    std::mt19937 rng(137);
    for (int i = 0; i < 50; ++i) {
        std::uniform_int_distribution<int> dim(8, 40);
        const int w = dim(rng), h = dim(rng);
        const RasterImage img = testutil::random_image(rng, w, h);
        const auto hist = metrics::compute_histogram(img);
        for (int ch = 0; ch < 3; ++ch) {
            uint64_t mass = 0;
            for (int v = 0; v < 256; ++v) mass += hist.bins[ch][v];
            c.expect(mass == img.pixel_count(), "histogram mass != pixel count");
        }

        // stego vs cover: altered bins are carrier values or 39..44
        const RasterImage cover =
            testutil::cover_with_carriers(rng, 24, 24, 40 + rng() % 60, rng() % 6);
        const auto payload = testutil::random_bytes(rng, stego::capacity_bytes(cover));
        const RasterImage stego_img = stego::embed(cover, payload);

        std::set<int> carrier_values[3];
        for (const auto& coord : stego::find_carriers(cover)) {
            const auto px = cover.at(coord.x, coord.y);
            carrier_values[0].insert(px.r);
            carrier_values[1].insert(px.g);
            carrier_values[2].insert(px.b);
        }
        const auto hc = metrics::compute_histogram(cover);
        const auto hs = metrics::compute_histogram(stego_img);
        for (int ch = 0; ch < 3; ++ch) {
            for (int v = 0; v < 256; ++v) {
                if (hc.bins[ch][v] == hs.bins[ch][v]) continue;
                const bool allowed = carrier_values[ch].count(v) || (v >= 39 && v <= 44);
                c.expect(allowed, "unexpected change in bin " + std::to_string(v));
            }
        }
        if (!c.ok) break;
    }
    c.report();
}

}  // namespace

int main() {
    criterion_threshold_guarantee();
    criterion_lossless_reconstruction();
    criterion_stego_roundtrip();
    criterion_distortion_bound();
    criterion_metric_identities();
    criterion_msb_preservation();
    criterion_end_to_end();
    criterion_histogram_conservation();

    std::printf("RESULT: %d/8 criteria passed\n", 8 - g_failures);
    return g_failures;
}
