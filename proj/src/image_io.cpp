#include "visus/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>

namespace visus {

namespace {

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "' for reading");
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    if (in.bad()) fail(Errc::io_error, "read failed for '" + path + "'");
    return data;
}

void write_file(const std::string& path, const std::vector<uint8_t>& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) fail(Errc::io_error, "write failed for '" + path + "'");
}

bool starts_with(const std::vector<uint8_t>& data, std::initializer_list<uint8_t> magic) {
    if (data.size() < magic.size()) return false;
    return std::equal(magic.begin(), magic.end(), data.begin());
}

ImageFormat sniff_format(const std::vector<uint8_t>& data, const std::string& path) {
    if (starts_with(data, {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A})) return ImageFormat::png;
    if (starts_with(data, {'B', 'M'})) return ImageFormat::bmp;
    if (data.size() >= 3 && data[0] == 'P' && data[1] == '6' &&
        (std::isspace(data[2]) || data[2] == '#'))
        return ImageFormat::ppm;
    if (starts_with(data, {0xFF, 0xD8, 0xFF}))
        fail(Errc::unsupported_format, "'" + path + "' is JPEG; lossy formats are not supported");
    if (starts_with(data, {'G', 'I', 'F', '8'}))
        fail(Errc::unsupported_format, "'" + path + "' is GIF; not a supported format");
    fail(Errc::unsupported_format,
         "'" + path + "' is not a supported image format (PNG, BMP, or binary PPM)");
}

// ---- BMP (24-bit uncompressed, BITMAPINFOHEADER family) --------------------

uint16_t rd16(const std::vector<uint8_t>& d, size_t off) {
    return static_cast<uint16_t>(d[off] | (d[off + 1] << 8));
}

uint32_t rd32(const std::vector<uint8_t>& d, size_t off) {
    return uint32_t(d[off]) | (uint32_t(d[off + 1]) << 8) | (uint32_t(d[off + 2]) << 16) |
           (uint32_t(d[off + 3]) << 24);
}

void wr16(std::vector<uint8_t>& d, uint16_t v) {
    d.push_back(uint8_t(v));
    d.push_back(uint8_t(v >> 8));
}

void wr32(std::vector<uint8_t>& d, uint32_t v) {
    d.push_back(uint8_t(v));
    d.push_back(uint8_t(v >> 8));
    d.push_back(uint8_t(v >> 16));
    d.push_back(uint8_t(v >> 24));
}

// ---- PPM (binary P6) --------------------------------------------------------

struct PpmHeaderReader {
    const std::vector<uint8_t>& data;
    size_t pos = 0;

    // PNM allows '#' comments anywhere between header tokens.
    void skip_space_and_comments() {
        while (pos < data.size()) {
            if (std::isspace(data[pos])) {
                ++pos;
            } else if (data[pos] == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    uint64_t next_uint() {
        skip_space_and_comments();
        if (pos >= data.size() || !std::isdigit(data[pos]))
            fail(Errc::decode_error, "PPM header: expected an integer");
        uint64_t value = 0;
        while (pos < data.size() && std::isdigit(data[pos])) {
            value = value * 10 + (data[pos] - '0');
            if (value > (uint64_t(1) << 40)) fail(Errc::decode_error, "PPM header: value too large");
            ++pos;
        }
        return value;
    }
};

}  // namespace

namespace detail {

RasterImage decode_bmp(const std::vector<uint8_t>& file, bool strip_alpha) {
    if (file.size() < 54 || file[0] != 'B' || file[1] != 'M')
        fail(Errc::decode_error, "BMP: truncated or bad header");
    const uint32_t data_offset = rd32(file, 10);
    const uint32_t dib_size = rd32(file, 14);
    if (dib_size < 40) fail(Errc::unsupported_format, "BMP: only BITMAPINFOHEADER and later supported");
    const int32_t width = static_cast<int32_t>(rd32(file, 18));
    const int32_t raw_height = static_cast<int32_t>(rd32(file, 22));
    const uint16_t bit_count = rd16(file, 28);
    const uint32_t compression = rd32(file, 30);

    if (width <= 0 || raw_height == 0) fail(Errc::decode_error, "BMP: bad dimensions");
    if (compression != 0) fail(Errc::unsupported_format, "BMP: compressed BMP not supported");
    if (bit_count != 24 && bit_count != 32)
        fail(Errc::unsupported_format, "BMP: only 24-bit (or 32-bit RGBA) supported");

    const bool top_down = raw_height < 0;
    const int height = top_down ? -raw_height : raw_height;
    const int bytes_pp = bit_count / 8;

    if (bit_count == 32 && !strip_alpha)
        fail(Errc::alpha_present, "BMP has an alpha channel; pass --strip-alpha to drop it");

    const size_t stride = (static_cast<size_t>(width) * bytes_pp + 3) & ~size_t(3);
    if (file.size() < data_offset + stride * height)
        fail(Errc::decode_error, "BMP: pixel data truncated");

    RasterImage img(width, height);
    uint8_t* dst = img.bytes().data();
    for (int row = 0; row < height; ++row) {
        const int y = top_down ? row : height - 1 - row;
        const uint8_t* src = file.data() + data_offset + stride * row;
        uint8_t* out = dst + 3 * static_cast<size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            out[3 * x + 0] = src[bytes_pp * x + 2];  // stored as B,G,R[,A]
            out[3 * x + 1] = src[bytes_pp * x + 1];
            out[3 * x + 2] = src[bytes_pp * x + 0];
        }
    }
    return img;
}

std::vector<uint8_t> encode_bmp(const RasterImage& image) {
    const int w = image.width();
    const int h = image.height();
    const size_t stride = (static_cast<size_t>(w) * 3 + 3) & ~size_t(3);
    const size_t pixel_bytes = stride * h;

    std::vector<uint8_t> out;
    out.reserve(54 + pixel_bytes);
    out.push_back('B');
    out.push_back('M');
    wr32(out, static_cast<uint32_t>(54 + pixel_bytes));
    wr32(out, 0);
    wr32(out, 54);
    wr32(out, 40);  // BITMAPINFOHEADER
    wr32(out, static_cast<uint32_t>(w));
    wr32(out, static_cast<uint32_t>(h));  // positive: bottom-up
    wr16(out, 1);
    wr16(out, 24);
    wr32(out, 0);  // BI_RGB
    wr32(out, static_cast<uint32_t>(pixel_bytes));
    wr32(out, 2835);  // 72 dpi
    wr32(out, 2835);
    wr32(out, 0);
    wr32(out, 0);

    const uint8_t* src = image.bytes().data();
    for (int row = 0; row < h; ++row) {
        const int y = h - 1 - row;
        const uint8_t* in = src + 3 * static_cast<size_t>(y) * w;
        size_t written = 0;
        for (int x = 0; x < w; ++x) {
            out.push_back(in[3 * x + 2]);
            out.push_back(in[3 * x + 1]);
            out.push_back(in[3 * x + 0]);
            written += 3;
        }
        while (written++ < stride) out.push_back(0);
    }
    return out;
}

RasterImage decode_ppm(const std::vector<uint8_t>& file) {
    if (file.size() < 2 || file[0] != 'P' || file[1] != '6')
        fail(Errc::decode_error, "PPM: missing P6 magic");
    PpmHeaderReader rd{file, 2};
    const uint64_t width = rd.next_uint();
    const uint64_t height = rd.next_uint();
    const uint64_t maxval = rd.next_uint();
    if (maxval != 255)
        fail(Errc::unsupported_format, "PPM: only maxval 255 (8-bit channels) supported");
    if (rd.pos >= file.size() || !std::isspace(file[rd.pos]))
        fail(Errc::decode_error, "PPM: header not terminated by whitespace");
    ++rd.pos;  // exactly one whitespace byte before the raster

    if (width == 0 || height == 0 || width > INT32_MAX || height > INT32_MAX)
        fail(Errc::decode_error, "PPM: bad dimensions");
    const size_t need = static_cast<size_t>(width) * height * 3;
    if (file.size() - rd.pos < need) fail(Errc::decode_error, "PPM: pixel data truncated");

    return RasterImage(static_cast<int>(width), static_cast<int>(height),
                       std::vector<uint8_t>(file.begin() + rd.pos, file.begin() + rd.pos + need));
}

std::vector<uint8_t> encode_ppm(const RasterImage& image) {
    const std::string header = "P6\n" + std::to_string(image.width()) + " " +
                               std::to_string(image.height()) + "\n255\n";
    std::vector<uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.bytes().begin(), image.bytes().end());
    return out;
}

}  // namespace detail

std::optional<ImageFormat> format_from_extension(const std::string& path) {
    const size_t dot = path.rfind('.');
    if (dot == std::string::npos) return std::nullopt;
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == "png") return ImageFormat::png;
    if (ext == "bmp") return ImageFormat::bmp;
    if (ext == "ppm") return ImageFormat::ppm;
    return std::nullopt;
}

RasterImage load_image(const std::string& path, const LoadOptions& opts) {
    const std::vector<uint8_t> data = read_file(path);
    switch (sniff_format(data, path)) {
        case ImageFormat::png: return detail::decode_png(data, opts.strip_alpha);
        case ImageFormat::bmp: return detail::decode_bmp(data, opts.strip_alpha);
        case ImageFormat::ppm: return detail::decode_ppm(data);
    }
    fail(Errc::decode_error, "unreachable");
}

void save_image(const RasterImage& image, const std::string& path) {
    const auto format = format_from_extension(path);
    if (!format)
        fail(Errc::unsupported_format,
             "cannot infer format for '" + path + "': use a .png, .bmp, or .ppm extension");
    switch (*format) {
        case ImageFormat::png: write_file(path, detail::encode_png(image)); return;
        case ImageFormat::bmp: write_file(path, detail::encode_bmp(image)); return;
        case ImageFormat::ppm: write_file(path, detail::encode_ppm(image)); return;
    }
}

}  // namespace visus
