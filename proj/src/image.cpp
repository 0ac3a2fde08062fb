#include "visus/image.hpp"

namespace visus {

namespace {
size_t checked_byte_count(int width, int height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("image dimensions must be positive");
    const uint64_t pixels = uint64_t(width) * uint64_t(height);
    if (pixels > (uint64_t(1) << 32))
        throw std::invalid_argument("image too large");
    return static_cast<size_t>(pixels) * 3;
}
}  // namespace

RasterImage::RasterImage(int width, int height)
    : width_(width), height_(height), data_(checked_byte_count(width, height), 0) {}

RasterImage::RasterImage(int width, int height, std::vector<uint8_t> interleaved_rgb)
    : width_(width), height_(height), data_(std::move(interleaved_rgb)) {
    if (data_.size() != checked_byte_count(width, height))
        throw std::invalid_argument("pixel buffer size does not match dimensions");
}

Rgb RasterImage::at(int x, int y) const {
    if (!in_bounds(x, y)) throw std::out_of_range("pixel coordinate out of bounds");
    const uint8_t* p = data_.data() + 3 * (static_cast<size_t>(y) * width_ + x);
    return {p[0], p[1], p[2]};
}

void RasterImage::set(int x, int y, Rgb px) {
    if (!in_bounds(x, y)) throw std::out_of_range("pixel coordinate out of bounds");
    uint8_t* p = data_.data() + 3 * (static_cast<size_t>(y) * width_ + x);
    p[0] = px.r;
    p[1] = px.g;
    p[2] = px.b;
}

}  // namespace visus
