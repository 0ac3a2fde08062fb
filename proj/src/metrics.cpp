#include "visus/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"
#include "visus/kernels.hpp"

namespace visus::metrics {

namespace {

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();
constexpr double kPeakSquared = 255.0 * 255.0;

std::vector<uint8_t> channel_plane(const RasterImage& image, int channel) {
    const uint8_t* src = image.bytes().data() + channel;
    std::vector<uint8_t> plane(image.pixel_count());
    for (size_t i = 0; i < plane.size(); ++i) plane[i] = src[3 * i];
    return plane;
}

ChannelMetrics channel_metrics(const std::vector<uint8_t>& x, const std::vector<uint8_t>& xm) {
    const auto& k = kernels::active();
    const size_t n = x.size();
    const kernels::DiffStats d = k.diff_stats(x.data(), xm.data(), n);
    const uint64_t sum_x = k.sum(x.data(), n);
    const uint64_t sum_x2 = k.sum_squares(x.data(), n);
    const uint64_t sum_xx = k.dot(x.data(), xm.data(), n);

    ChannelMetrics m;
    m.max_difference = d.max_abs;
    m.avg_abs_difference = static_cast<double>(d.sum_abs) / static_cast<double>(n);
    m.mse = static_cast<double>(d.sum_sq) / static_cast<double>(n);
    m.psnr_db = m.mse > 0 ? 10.0 * std::log10(kPeakSquared / m.mse)
                          : std::numeric_limits<double>::infinity();

    if (sum_x == 0) {
        // All-zero original channel: every ratio against it is undefined.
        m.norm_avg_abs_difference = kUndefined;
        m.nmse = kUndefined;
        m.snr_linear = kUndefined;
        m.ncc = kUndefined;
        m.correlation_quality = kUndefined;
    } else {
        m.norm_avg_abs_difference = static_cast<double>(d.sum_abs) / static_cast<double>(sum_x);
        m.nmse = static_cast<double>(d.sum_sq) / static_cast<double>(sum_x2);
        m.snr_linear = d.sum_sq > 0
                           ? static_cast<double>(sum_x2) / static_cast<double>(d.sum_sq)
                           : std::numeric_limits<double>::infinity();
        m.ncc = static_cast<double>(sum_xx) / static_cast<double>(sum_x2);
        m.correlation_quality = static_cast<double>(sum_xx) / static_cast<double>(sum_x);
    }
    m.image_fidelity = 1.0 - m.nmse;
    return m;
}

struct NamedMetric {
    const char* name;
    double (*get)(const ChannelMetrics&);
};

constexpr NamedMetric kMetricTable[] = {
    {"max_difference", [](const ChannelMetrics& m) { return double(m.max_difference); }},
    {"avg_abs_difference", [](const ChannelMetrics& m) { return m.avg_abs_difference; }},
    {"norm_avg_abs_difference", [](const ChannelMetrics& m) { return m.norm_avg_abs_difference; }},
    {"mse", [](const ChannelMetrics& m) { return m.mse; }},
    {"nmse", [](const ChannelMetrics& m) { return m.nmse; }},
    {"snr_linear", [](const ChannelMetrics& m) { return m.snr_linear; }},
    {"psnr_db", [](const ChannelMetrics& m) { return m.psnr_db; }},
    {"image_fidelity", [](const ChannelMetrics& m) { return m.image_fidelity; }},
    {"ncc", [](const ChannelMetrics& m) { return m.ncc; }},
    {"correlation_quality", [](const ChannelMetrics& m) { return m.correlation_quality; }},
};

const char* kFootnotes[] = {
    "psnr_db = 10*log10(255^2 / mse); inf when mse = 0",
    "norm_avg_abs_difference = sum|x - x'| / sum(x)",
    "n/a marks ratios against an all-zero original channel",
};

std::string format_value(double v, const char* undefined_token, const char* inf_token,
                         const char* fmt = "%.12g") {
    if (std::isnan(v)) return undefined_token;
    if (std::isinf(v)) return v > 0 ? inf_token : std::string("-") + inf_token;
    char buf[40];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

nlohmann::json json_value(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

}  // namespace

MetricsReport compute_metrics(const RasterImage& original, const RasterImage& modified) {
    if (original.width() != modified.width() || original.height() != modified.height())
        fail(Errc::dimension_mismatch,
             "image dimensions differ: " + std::to_string(original.width()) + "x" +
                 std::to_string(original.height()) + " vs " + std::to_string(modified.width()) +
                 "x" + std::to_string(modified.height()));

    MetricsReport report;
    for (int c = 0; c < 3; ++c) {
        ChannelMetrics m = channel_metrics(channel_plane(original, c), channel_plane(modified, c));
        (c == 0 ? report.r : c == 1 ? report.g : report.b) = m;
    }
    return report;
}

Histogram compute_histogram(const RasterImage& image) {
    Histogram h;
    const uint8_t* p = image.bytes().data();
    const size_t n = image.pixel_count();
    for (size_t i = 0; i < n; ++i, p += 3) {
        ++h.bins[0][p[0]];
        ++h.bins[1][p[1]];
        ++h.bins[2][p[2]];
    }
    return h;
}

std::string to_json(const MetricsReport& report) {
    nlohmann::json channels;
    const char* names[] = {"R", "G", "B"};
    for (int c = 0; c < 3; ++c) {
        const ChannelMetrics& m = report.channel(c);
        nlohmann::json obj;
        for (const NamedMetric& nm : kMetricTable) obj[nm.name] = json_value(nm.get(m));
        channels[names[c]] = std::move(obj);
    }
    nlohmann::json root;
    root["channels"] = std::move(channels);
    root["notes"] = kFootnotes;
    return root.dump(2) + "\n";
}

std::string to_table(const MetricsReport& report) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-26s %18s %18s %18s\n", "metric", "R", "G", "B");
    out += line;
    for (const NamedMetric& nm : kMetricTable) {
        std::snprintf(line, sizeof(line), "%-26s %18s %18s %18s\n", nm.name,
                      format_value(nm.get(report.r), "n/a", "inf").c_str(),
                      format_value(nm.get(report.g), "n/a", "inf").c_str(),
                      format_value(nm.get(report.b), "n/a", "inf").c_str());
        out += line;
    }
    out += "\nnotes:\n";
    for (const char* note : kFootnotes) {
        out += "  ";
        out += note;
        out += "\n";
    }
    return out;
}

std::string to_csv(const MetricsReport& report) {
    std::string out = "metric,R,G,B\n";
    for (const NamedMetric& nm : kMetricTable) {
        out += nm.name;
        for (int c = 0; c < 3; ++c) {
            out += ',';
            out += format_value(nm.get(report.channel(c)), "nan", "inf", "%.17g");
        }
        out += '\n';
    }
    return out;
}

std::string to_csv(const Histogram& histogram) {
    std::string out = "value,R,G,B\n";
    char line[96];
    for (int v = 0; v < 256; ++v) {
        std::snprintf(line, sizeof(line), "%d,%llu,%llu,%llu\n", v,
                      static_cast<unsigned long long>(histogram.bins[0][v]),
                      static_cast<unsigned long long>(histogram.bins[1][v]),
                      static_cast<unsigned long long>(histogram.bins[2][v]));
        out += line;
    }
    return out;
}

}  // namespace visus::metrics
