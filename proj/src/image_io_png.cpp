// PNG codec backed by libpng, reading from and writing to memory buffers.
// libpng reports errors via longjmp, so each function keeps its mutable
// state behind pointers that are set before setjmp and never reassigned.

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <memory>

#include "visus/image_io.hpp"

namespace visus::detail {

namespace {

struct MemReader {
    const uint8_t* data;
    size_t size;
    size_t pos;
};

void mem_read(png_structp png, png_bytep out, png_size_t count) {
    auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
    if (count > r->size - r->pos) png_error(png, "unexpected end of stream");
    std::memcpy(out, r->data + r->pos, count);
    r->pos += count;
}

void mem_write(png_structp png, png_bytep data, png_size_t count) {
    auto* v = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(png));
    v->insert(v->end(), data, data + count);
}

void mem_flush(png_structp) {}

void quiet_warning(png_structp, png_const_charp) {}

struct ReadState {
    std::vector<uint8_t> pixels;
    std::vector<png_bytep> rows;
};

}  // namespace

RasterImage decode_png(const std::vector<uint8_t>& file, bool strip_alpha) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, quiet_warning);
    if (!png) fail(Errc::decode_error, "PNG: failed to initialize reader");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail(Errc::decode_error, "PNG: failed to initialize reader");
    }

    MemReader reader{file.data(), file.size(), 0};
    auto state = std::make_unique<ReadState>();

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(Errc::decode_error, "PNG: decode failed (corrupt or truncated file)");
    }

    png_set_read_fn(png, &reader, mem_read);
    png_read_info(png, info);

    png_uint_32 width = 0, height = 0;
    int bit_depth = 0, color_type = 0;
    png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);

    if (bit_depth == 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(Errc::unsupported_format, "PNG: 16-bit channels not supported");
    }

    const bool has_trns = png_get_valid(png, info, PNG_INFO_tRNS) != 0;
    const bool has_alpha = (color_type & PNG_COLOR_MASK_ALPHA) != 0 || has_trns;
    if (has_alpha && !strip_alpha) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(Errc::alpha_present, "PNG has an alpha channel; pass --strip-alpha to drop it");
    }

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (has_trns) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    if (has_alpha) png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    if (png_get_rowbytes(png, info) != static_cast<size_t>(width) * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(Errc::decode_error, "PNG: unexpected row layout after transforms");
    }

    state->pixels.resize(static_cast<size_t>(width) * height * 3);
    state->rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y)
        state->rows[y] = state->pixels.data() + static_cast<size_t>(y) * width * 3;

    png_read_image(png, state->rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(state->pixels));
}

std::vector<uint8_t> encode_png(const RasterImage& image) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, quiet_warning);
    if (!png) fail(Errc::io_error, "PNG: failed to initialize writer");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        fail(Errc::io_error, "PNG: failed to initialize writer");
    }

    auto out = std::make_unique<std::vector<uint8_t>>();
    auto rows = std::make_unique<std::vector<png_bytep>>(image.height());

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(Errc::io_error, "PNG: encode failed");
    }

    png_set_write_fn(png, out.get(), mem_write, mem_flush);
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()),
                 static_cast<png_uint_32>(image.height()), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const uint8_t* src = image.bytes().data();
    for (int y = 0; y < image.height(); ++y)
        (*rows)[y] = const_cast<png_bytep>(src + static_cast<size_t>(y) * image.width() * 3);

    png_write_image(png, rows->data());
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);

    return std::move(*out);
}

}  // namespace visus::detail
