// visus — hide a message in a cover image, split the result into 7
// bit-plane shares, reconstruct by bitwise OR, and measure distortion.
//
// Exit codes: 0 ok, 1 general error, 2 message too large, 3 unsupported
// input format, 4 no recoverable message, 5 incomplete share subset
// (--require-complete), 6 dimension mismatch.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "visus/image_io.hpp"
#include "visus/kernels.hpp"
#include "visus/metrics.hpp"
#include "visus/shares.hpp"
#include "visus/stego.hpp"

namespace fs = std::filesystem;

namespace {

bool log_enabled() {
    const char* env = std::getenv("VISUS_LOG");
    return env && (std::string_view(env) == "debug" || std::string_view(env) == "info");
}

void log_line(const std::string& msg) {
    if (log_enabled()) std::cerr << "[visus] " << msg << "\n";
}

int exit_code_for(visus::Errc code) {
    switch (code) {
        case visus::Errc::payload_too_long:
        case visus::Errc::message_too_large: return 2;
        case visus::Errc::unsupported_format:
        case visus::Errc::alpha_present: return 3;
        case visus::Errc::malformed_header:
        case visus::Errc::truncated_stream: return 4;
        case visus::Errc::incomplete_shares: return 5;
        case visus::Errc::dimension_mismatch: return 6;
        default: return 1;
    }
}

std::vector<uint8_t> read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) visus::fail(visus::Errc::io_error, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_binary_file(const std::string& path, std::span<const uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) visus::fail(visus::Errc::io_error, "cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out.flush()) visus::fail(visus::Errc::io_error, "write failed for '" + path + "'");
}

void write_text_file(const std::string& path, const std::string& text) {
    write_binary_file(path, {reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

// Share files follow the shareN.<ext> convention; the index is the
// trailing number of the stem.
int share_index_from_path(const std::string& path) {
    const std::string stem = fs::path(path).stem().string();
    size_t end = stem.size();
    size_t begin = end;
    while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1]))) --begin;
    if (begin == end)
        visus::fail(visus::Errc::io_error,
                    "cannot infer a share index from '" + path + "' (expected e.g. share3.png)");
    const int idx = std::atoi(stem.substr(begin).c_str());
    if (idx < 1 || idx > visus::shares::kShareCount)
        visus::fail(visus::Errc::io_error, "share index in '" + path + "' must be 1.." +
                                               std::to_string(visus::shares::kShareCount));
    return idx;
}

std::string describe_missing_bits(uint8_t union_mask) {
    std::string out;
    for (int bit = 0; bit < 8; ++bit) {
        if (union_mask & (1u << bit)) continue;
        if (!out.empty()) out += ", ";
        out += "missing bit " + std::to_string(bit + 1);  // 1 = LSB, 8 = MSB
    }
    return out;
}

std::string subset_to_string(const std::vector<int>& members) {
    std::string out = "{";
    for (size_t i = 0; i < members.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(members[i]);
    }
    return out + "}";
}

struct CommonConfig {
    bool strip_alpha = false;
    visus::LoadOptions load_options() const { return {strip_alpha}; }
};

// ---- subcommands ------------------------------------------------------------

struct EmbedCmd {
    CommonConfig common;
    std::string cover_path, out_path, message, message_file;

    int run() const {
        std::vector<uint8_t> payload;
        if (!message_file.empty()) {
            payload = read_binary_file(message_file);
        } else {
            payload.assign(message.begin(), message.end());
        }
        const visus::RasterImage cover = visus::load_image(cover_path, common.load_options());
        const size_t capacity = visus::stego::capacity_bytes(cover);
        const visus::RasterImage stego = visus::stego::embed(cover, payload);
        visus::save_image(stego, out_path);
        std::cout << "stego written: " << out_path << "\n"
                  << "capacity:  " << capacity << " bytes\n"
                  << "payload:   " << payload.size() << " bytes\n"
                  << "remaining: " << capacity - payload.size() << " bytes\n";
        return 0;
    }
};

struct ExtractCmd {
    CommonConfig common;
    std::string stego_path, out_path;

    int run() const {
        const visus::RasterImage stego = visus::load_image(stego_path, common.load_options());
        const std::vector<uint8_t> payload = visus::stego::extract(stego);
        if (!out_path.empty()) {
            write_binary_file(out_path, payload);
            std::cout << "payload written: " << out_path << " (" << payload.size()
                      << " bytes)\n";
        } else {
            std::cout.write(reinterpret_cast<const char*>(payload.data()),
                            static_cast<std::streamsize>(payload.size()));
            std::cout << "\n";
        }
        return 0;
    }
};

struct ShareCmd {
    CommonConfig common;
    std::string image_path, out_dir, format = "png";

    int run() const {
        const visus::RasterImage image = visus::load_image(image_path, common.load_options());
        fs::create_directories(out_dir);
        const auto shares = visus::shares::make_shares(image);
        for (const auto& share : shares) {
            const std::string path =
                (fs::path(out_dir) / ("share" + std::to_string(share.index) + "." + format))
                    .string();
            visus::save_image(share.image, path);
            std::cout << "share written: " << path << "\n";
        }
        return 0;
    }
};

struct ReconstructCmd {
    CommonConfig common;
    std::vector<std::string> share_paths;
    std::string out_path;
    bool require_complete = false;

    int run() const {
        std::vector<visus::shares::Share> parts;
        parts.reserve(share_paths.size());
        for (const std::string& path : share_paths)
            parts.push_back({share_index_from_path(path),
                             visus::load_image(path, common.load_options())});

        auto [image, report] = visus::shares::reconstruct(parts);
        std::cout << "shares: " << subset_to_string(report.members) << "\n";
        char mask[8];
        std::snprintf(mask, sizeof(mask), "0x%02X", report.union_mask);
        std::cout << "union mask: " << mask << "\n";
        if (report.complete) {
            std::cout << "complete: yes\n";
        } else {
            std::cout << "complete: no (" << describe_missing_bits(report.union_mask) << ")\n";
        }

        if (!report.complete && require_complete)
            visus::fail(visus::Errc::incomplete_shares,
                        "incomplete share subset: " + describe_missing_bits(report.union_mask));

        visus::save_image(image, out_path);
        std::cout << "reconstructed: " << out_path << "\n";
        return 0;
    }
};

struct MetricsCmd {
    CommonConfig common;
    std::string original_path, modified_path, format = "table", out_path;

    int run() const {
        const visus::RasterImage original =
            visus::load_image(original_path, common.load_options());
        const visus::RasterImage modified =
            visus::load_image(modified_path, common.load_options());
        const visus::metrics::MetricsReport report =
            visus::metrics::compute_metrics(original, modified);

        std::string text;
        if (format == "json") {
            text = visus::metrics::to_json(report);
        } else if (format == "csv") {
            text = visus::metrics::to_csv(report);
        } else {
            text = visus::metrics::to_table(report);
        }
        if (!out_path.empty()) {
            write_text_file(out_path, text);
        } else {
            std::cout << text;
        }
        return 0;
    }
};

struct HistogramCmd {
    CommonConfig common;
    std::string image_path, out_path;

    int run() const {
        const visus::RasterImage image = visus::load_image(image_path, common.load_options());
        const std::string csv = visus::metrics::to_csv(visus::metrics::compute_histogram(image));
        if (!out_path.empty()) {
            write_text_file(out_path, csv);
        } else {
            std::cout << csv;
        }
        return 0;
    }
};

struct VerifyThresholdCmd {
    std::string format = "table";

    int run() const {
        const auto reports = visus::shares::verify_threshold();
        std::vector<const visus::shares::SubsetReport*> failing_triples;
        size_t complete_count = 0;
        for (const auto& r : reports) {
            if (r.complete) ++complete_count;
            if (!r.complete && r.members.size() == 3) failing_triples.push_back(&r);
        }

        if (format == "json") {
            nlohmann::json subsets = nlohmann::json::array();
            for (const auto& r : reports) {
                subsets.push_back({{"members", r.members},
                                   {"union_mask", r.union_mask},
                                   {"complete", r.complete}});
            }
            nlohmann::json root;
            root["subsets"] = std::move(subsets);
            root["minimum_guaranteed_subset_size"] = visus::shares::guaranteed_subset_size();
            std::cout << root.dump(2) << "\n";
            return 0;
        }

        char line[64];
        std::cout << "subset            union mask  complete\n";
        for (const auto& r : reports) {
            std::snprintf(line, sizeof(line), "%-18s 0x%02X       %s\n",
                          subset_to_string(r.members).c_str(), r.union_mask,
                          r.complete ? "yes" : "no");
            std::cout << line;
        }
        std::cout << "\nsubsets: " << reports.size() << " total, " << complete_count
                  << " complete, " << (reports.size() - complete_count) << " incomplete\n";
        std::cout << "minimum guaranteed subset size: "
                  << visus::shares::guaranteed_subset_size() << "\n";
        std::cout << "incomplete 3-share subsets (" << failing_triples.size() << "):";
        for (const auto* r : failing_triples) std::cout << " " << subset_to_string(r->members);
        std::cout << "\n";
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"carrier-pixel steganography with 7-way bit-plane secret sharing"};
    app.set_version_flag("--version", "visus 0.1.0");
    app.require_subcommand(1);

    EmbedCmd embed;
    auto* embed_cmd = app.add_subcommand("embed", "hide a message in a cover image");
    embed_cmd->add_option("--cover", embed.cover_path, "cover image (png/bmp/ppm)")->required();
    embed_cmd->add_option("--out", embed.out_path, "stego image to write")->required();
    auto* msg_opt = embed_cmd->add_option("--message", embed.message, "message text (UTF-8)");
    auto* msg_file_opt =
        embed_cmd->add_option("--message-file", embed.message_file, "message bytes from a file");
    msg_opt->excludes(msg_file_opt);
    msg_file_opt->excludes(msg_opt);
    embed_cmd->add_flag("--strip-alpha", embed.common.strip_alpha,
                        "drop the alpha channel of the input instead of rejecting it");

    ExtractCmd extract;
    auto* extract_cmd = app.add_subcommand("extract", "recover the message from a stego image");
    extract_cmd->add_option("--stego", extract.stego_path, "stego image")->required();
    extract_cmd->add_option("--out", extract.out_path, "write payload bytes here instead of stdout");
    extract_cmd->add_flag("--strip-alpha", extract.common.strip_alpha,
                          "drop the alpha channel of the input instead of rejecting it");

    ShareCmd share;
    auto* share_cmd = app.add_subcommand("share", "split an image into 7 bit-plane shares");
    share_cmd->add_option("--image", share.image_path, "image to split")->required();
    share_cmd->add_option("--out-dir", share.out_dir, "directory for share1..share7")->required();
    share_cmd->add_option("--format", share.format, "share file format")
        ->check(CLI::IsMember({"png", "bmp", "ppm"}));
    share_cmd->add_flag("--strip-alpha", share.common.strip_alpha,
                        "drop the alpha channel of the input instead of rejecting it");

    ReconstructCmd reconstruct;
    auto* reconstruct_cmd =
        app.add_subcommand("reconstruct", "OR a subset of shares back into an image");
    reconstruct_cmd->add_option("shares", reconstruct.share_paths, "share files (shareN.ext)")
        ->required()
        ->expected(1, visus::shares::kShareCount);
    reconstruct_cmd->add_option("--out", reconstruct.out_path, "reconstructed image to write")
        ->required();
    reconstruct_cmd->add_flag("--require-complete", reconstruct.require_complete,
                              "fail (exit 5) unless the subset covers all 8 bit planes");
    reconstruct_cmd->add_flag("--strip-alpha", reconstruct.common.strip_alpha,
                              "drop the alpha channel of the inputs instead of rejecting them");

    MetricsCmd metrics;
    auto* metrics_cmd =
        app.add_subcommand("metrics", "distortion metrics for an (original, modified) pair");
    metrics_cmd->add_option("--original", metrics.original_path, "original image")->required();
    metrics_cmd->add_option("--modified", metrics.modified_path, "modified image")->required();
    metrics_cmd->add_option("--format", metrics.format, "output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    metrics_cmd->add_option("--out", metrics.out_path, "write the report here instead of stdout");
    metrics_cmd->add_flag("--strip-alpha", metrics.common.strip_alpha,
                          "drop the alpha channel of the inputs instead of rejecting them");

    HistogramCmd histogram;
    auto* histogram_cmd =
        app.add_subcommand("histogram", "per-channel 256-bin histogram as CSV");
    histogram_cmd->add_option("--image", histogram.image_path, "image to analyze")->required();
    histogram_cmd->add_option("--out", histogram.out_path, "write the CSV here instead of stdout");
    histogram_cmd->add_flag("--strip-alpha", histogram.common.strip_alpha,
                            "drop the alpha channel of the input instead of rejecting it");

    VerifyThresholdCmd verify;
    auto* verify_cmd = app.add_subcommand(
        "verify-threshold", "completeness of all 127 share subsets (mask arithmetic only)");
    verify_cmd->add_option("--format", verify.format, "output format")
        ->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 1;
    }

    if (embed_cmd->parsed() && msg_opt->count() == 0 && msg_file_opt->count() == 0) {
        std::cerr << "error: embed needs exactly one of --message / --message-file\n";
        return 1;
    }

    log_line(std::string("simd backend: ") + visus::kernels::active().name);

    try {
        if (embed_cmd->parsed()) return embed.run();
        if (extract_cmd->parsed()) return extract.run();
        if (share_cmd->parsed()) return share.run();
        if (reconstruct_cmd->parsed()) return reconstruct.run();
        if (metrics_cmd->parsed()) return metrics.run();
        if (histogram_cmd->parsed()) return histogram.run();
        if (verify_cmd->parsed()) return verify.run();
    } catch (const visus::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
