#pragma once

#include <array>
#include <string>

#include "visus/image.hpp"

// Distortion and correlation metrics for an (original, modified) image
// pair, computed per channel. With x the original channel, x' the
// modified one and N the pixel count:
//
//   max_difference            max |x - x'|
//   avg_abs_difference        sum |x - x'| / N
//   norm_avg_abs_difference   sum |x - x'| / sum x
//   mse                       sum (x - x')^2 / N
//   nmse                      sum (x - x')^2 / sum x^2
//   snr_linear                sum x^2 / sum (x - x')^2
//   psnr_db                   10 * log10(255^2 / mse)
//   image_fidelity            1 - nmse
//   ncc                       sum (x * x') / sum x^2
//   correlation_quality       sum (x * x') / sum x
//
// All sums are exact 64-bit integer accumulations; only the final
// divisions happen in floating point. A zero denominator yields NaN
// ("undefined": the original channel is all zero); a zero error term
// yields +infinity for snr_linear and psnr_db.

namespace visus::metrics {

struct ChannelMetrics {
    int max_difference = 0;
    double avg_abs_difference = 0;
    double norm_avg_abs_difference = 0;
    double mse = 0;
    double nmse = 0;
    double snr_linear = 0;
    double psnr_db = 0;
    double image_fidelity = 0;
    double ncc = 0;
    double correlation_quality = 0;
};

struct MetricsReport {
    ChannelMetrics r, g, b;

    const ChannelMetrics& channel(int c) const {
        return c == 0 ? r : (c == 1 ? g : b);
    }
};

MetricsReport compute_metrics(const RasterImage& original, const RasterImage& modified);

struct Histogram {
    // bins[channel][value]
    std::array<std::array<uint64_t, 256>, 3> bins{};
};

Histogram compute_histogram(const RasterImage& image);

std::string to_json(const MetricsReport& report);
std::string to_table(const MetricsReport& report);
std::string to_csv(const MetricsReport& report);
std::string to_csv(const Histogram& histogram);  // value,R,G,B

}  // namespace visus::metrics
