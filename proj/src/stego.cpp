#include "visus/stego.hpp"

#include <algorithm>
#include <string>

#include "visus/kernels.hpp"

namespace visus::stego {

namespace {

std::vector<uint8_t> carrier_mask(const RasterImage& image) {
    std::vector<uint8_t> mask(image.pixel_count());
    kernels::active().rgb_below(image.bytes().data(), image.pixel_count(), kCarrierLimit,
                                mask.data());
    return mask;
}

void append_byte_symbols(std::vector<uint8_t>& symbols, uint8_t byte) {
    symbols.push_back(byte >> 6);
    symbols.push_back((byte >> 4) & 3);
    symbols.push_back((byte >> 2) & 3);
    symbols.push_back(byte & 3);
}

}  // namespace

std::vector<PixelCoord> find_carriers(const RasterImage& image) {
    const std::vector<uint8_t> mask = carrier_mask(image);
    std::vector<PixelCoord> coords;
    const int w = image.width();
    for (size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) coords.push_back({static_cast<int>(i % w), static_cast<int>(i / w)});
    return coords;
}

size_t capacity_bytes(const RasterImage& image) {
    const std::vector<uint8_t> mask = carrier_mask(image);
    const size_t carriers = static_cast<size_t>(std::count(mask.begin(), mask.end(), uint8_t(1)));
    return carriers < kHeaderSymbols ? 0 : (carriers - kHeaderSymbols) / 4;
}

std::vector<uint8_t> frame_payload(std::span<const uint8_t> payload) {
    if (payload.size() > kMaxPayloadBytes)
        fail(Errc::payload_too_long, "payload is " + std::to_string(payload.size()) +
                                         " bytes; the 16-bit length header allows at most " +
                                         std::to_string(kMaxPayloadBytes));
    std::vector<uint8_t> symbols;
    symbols.reserve(kHeaderSymbols + 4 * payload.size());
    const uint16_t len = static_cast<uint16_t>(payload.size());
    append_byte_symbols(symbols, static_cast<uint8_t>(len >> 8));
    append_byte_symbols(symbols, static_cast<uint8_t>(len & 0xFF));
    for (uint8_t byte : payload) append_byte_symbols(symbols, byte);
    return symbols;
}

bool is_pattern_pixel(Rgb px) {
    const int at40 = (px.r == 40) + (px.g == 40) + (px.b == 40);
    if (at40 == 3) return true;
    if (at40 != 2) return false;
    const uint8_t odd = px.r != 40 ? px.r : (px.g != 40 ? px.g : px.b);
    return odd >= 40 && odd <= 43;
}

RasterImage sanitize(const RasterImage& cover) {
    RasterImage out = cover;
    uint8_t* px = out.bytes().data();
    const size_t n = out.pixel_count();
    for (size_t i = 0; i < n; ++i, px += 3) {
        if (px[0] < kCarrierLimit && px[1] < kCarrierLimit && px[2] < kCarrierLimit)
            continue;  // carriers are reserved for the message
        if (!is_pattern_pixel({px[0], px[1], px[2]})) continue;
        // Break the pattern on the channel that is not part of the 40/40
        // pair; when all three are 40 the blue channel takes the hit.
        uint8_t* odd = px[0] != 40 ? px : (px[1] != 40 ? px + 1 : px + 2);
        *odd = (*odd == 40) ? 39 : 44;
    }
    return out;
}

RasterImage embed(const RasterImage& cover, std::span<const uint8_t> payload) {
    const std::vector<uint8_t> symbols = frame_payload(payload);
    RasterImage stego = sanitize(cover);

    const std::vector<uint8_t> mask = carrier_mask(stego);
    const size_t carriers = static_cast<size_t>(std::count(mask.begin(), mask.end(), uint8_t(1)));
    if (symbols.size() > carriers)
        fail(Errc::message_too_large,
             "payload is " + std::to_string(payload.size()) + " bytes but the cover capacity is " +
                 std::to_string(capacity_bytes(cover)) + " bytes (carrier pixels: " +
                 std::to_string(carriers) + ")");

    uint8_t* px = stego.bytes().data();
    size_t next = 0;
    for (size_t i = 0; i < mask.size() && next < symbols.size(); ++i) {
        if (!mask[i]) continue;
        uint8_t* p = px + 3 * i;
        p[0] = static_cast<uint8_t>(40 + symbols[next++]);
        p[1] = 40;
        p[2] = 40;
    }
    return stego;
}

std::vector<uint8_t> extract(const RasterImage& stego) {
    std::vector<uint8_t> symbols;
    const uint8_t* px = stego.bytes().data();
    const size_t n = stego.pixel_count();
    for (size_t i = 0; i < n; ++i, px += 3) {
        const Rgb p{px[0], px[1], px[2]};
        if (is_pattern_pixel(p)) symbols.push_back(static_cast<uint8_t>(p.r + p.g + p.b - 120));
    }

    if (symbols.size() < kHeaderSymbols)
        fail(Errc::malformed_header, "found " + std::to_string(symbols.size()) +
                                         " pattern pixels; the 8-symbol length header needs 8");

    size_t length = 0;
    for (size_t i = 0; i < kHeaderSymbols; ++i) length = (length << 2) | symbols[i];

    if (symbols.size() - kHeaderSymbols < 4 * length)
        fail(Errc::truncated_stream,
             "header promises " + std::to_string(length) + " bytes but only " +
                 std::to_string((symbols.size() - kHeaderSymbols) / 4) + " are recoverable");

    std::vector<uint8_t> payload;
    payload.reserve(length);
    for (size_t b = 0; b < length; ++b) {
        const uint8_t* s = symbols.data() + kHeaderSymbols + 4 * b;
        payload.push_back(static_cast<uint8_t>((s[0] << 6) | (s[1] << 4) | (s[2] << 2) | s[3]));
    }
    return payload;
}

}  // namespace visus::stego
