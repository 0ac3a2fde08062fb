#pragma once

#include <optional>
#include <string>

#include "visus/image.hpp"

// Lossless image file I/O. Three formats, all with a bit-exact roundtrip
// contract: PNG (8-bit RGB), BMP (24-bit uncompressed), and binary PPM
// (P6, maxval 255). Loading detects the format from magic bytes; saving
// picks it from the file extension. Lossy inputs (JPEG, ...) are refused
// outright, and images with an alpha channel are rejected unless
// strip_alpha is set.

namespace visus {

enum class ImageFormat { png, bmp, ppm };

struct LoadOptions {
    bool strip_alpha = false;
};

RasterImage load_image(const std::string& path, const LoadOptions& opts = {});
void save_image(const RasterImage& image, const std::string& path);

std::optional<ImageFormat> format_from_extension(const std::string& path);

namespace detail {
// Memory-level codecs, exposed for tests.
RasterImage decode_png(const std::vector<uint8_t>& file, bool strip_alpha);
std::vector<uint8_t> encode_png(const RasterImage& image);
RasterImage decode_bmp(const std::vector<uint8_t>& file, bool strip_alpha);
std::vector<uint8_t> encode_bmp(const RasterImage& image);
RasterImage decode_ppm(const std::vector<uint8_t>& file);
std::vector<uint8_t> encode_ppm(const RasterImage& image);
}  // namespace detail

}  // namespace visus
