#pragma once

#include <span>
#include <vector>

#include "visus/image.hpp"

// Carrier-pixel offset coding. A pixel is a carrier when all three of its
// channels are below 40. Embedding lifts the first N carriers (in raster
// order) to (40 + s, 40, 40), where s is the next 2-bit symbol of the
// framed message. Extraction scans for pixels with two channels equal to
// 40 and the third in [40, 43] and recovers each symbol as
// (R + G + B) - 120, so it does not care which channel holds the offset.
//
// The symbol stream is a 16-bit big-endian byte-length header followed by
// the payload, every byte split MSB-first into four 2-bit symbols.

namespace visus::stego {

inline constexpr uint8_t kCarrierLimit = 40;  // channels strictly below this
inline constexpr size_t kHeaderSymbols = 8;   // 16-bit length, 2 bits each
inline constexpr size_t kMaxPayloadBytes = 65535;

// Raster-ordered coordinates of every carrier pixel.
std::vector<PixelCoord> find_carriers(const RasterImage& image);

// Largest payload embed() accepts: max(0, (carriers - 8) / 4).
size_t capacity_bytes(const RasterImage& image);

// Length header + payload as 2-bit symbols (values 0..3).
std::vector<uint8_t> frame_payload(std::span<const uint8_t> payload);

// True for pixels the extractor treats as symbol holders: at least two
// channels equal to 40 and the remaining one in [40, 43].
bool is_pattern_pixel(Rgb px);

// Perturbs every non-carrier pixel that would match the extraction
// pattern: the odd channel goes to 39 if it equals 40, else to 44.
// Carriers are left untouched. embed() applies this automatically.
RasterImage sanitize(const RasterImage& cover);

RasterImage embed(const RasterImage& cover, std::span<const uint8_t> payload);

std::vector<uint8_t> extract(const RasterImage& stego);

}  // namespace visus::stego
