#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace visus {

enum class Errc {
    io_error,
    unsupported_format,
    decode_error,
    alpha_present,
    payload_too_long,
    message_too_large,
    malformed_header,
    truncated_stream,
    dimension_mismatch,
    duplicate_share_index,
    incomplete_shares,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

struct Rgb {
    uint8_t r = 0;
    uint8_t g = 0;
    uint8_t b = 0;
    bool operator==(const Rgb&) const = default;
};

struct PixelCoord {
    int x = 0;
    int y = 0;
    bool operator==(const PixelCoord&) const = default;
};

/// 8-bit RGB raster, interleaved row-major storage with top-left origin.
/// Pixel order (0,0), (1,0), ..., (width-1,0), (0,1), ... is the canonical
/// ordering every other module relies on.
class RasterImage {
public:
    RasterImage(int width, int height);  // zero-filled
    RasterImage(int width, int height, std::vector<uint8_t> interleaved_rgb);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    size_t pixel_count() const noexcept { return static_cast<size_t>(width_) * height_; }

    bool in_bounds(int x, int y) const noexcept {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    Rgb at(int x, int y) const;
    void set(int x, int y, Rgb px);

    std::span<const uint8_t> bytes() const noexcept { return data_; }
    std::span<uint8_t> bytes() noexcept { return data_; }

    bool operator==(const RasterImage&) const = default;

private:
    int width_;
    int height_;
    std::vector<uint8_t> data_;  // 3 * width * height
};

}  // namespace visus
