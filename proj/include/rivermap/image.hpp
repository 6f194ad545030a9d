#pragma once

// Colouring and image files.
//
// PPM output is the reference format: "P6\n<w> <h>\n255\n" followed by
// width*height RGB triples, rows top to bottom, no trailing bytes. PNG output
// carries the same pixels (8-bit RGB, no interlace, filter 0 on every row,
// zlib level 9).

#include "raster.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rivermap {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

struct ColorStop {
    double at;
    Rgb color;
};

/// Piecewise-linear palette. Sea stops cover [-1, 0), land stops [0, 1].
struct ColorMap {
    std::vector<ColorStop> sea_stops;
    std::vector<ColorStop> land_stops;
    Rgb river_color;
    Rgb no_data;

    static ColorMap defaults() {
        return ColorMap{
            {{-1.0, {0, 16, 64}}, {-0.5, {8, 48, 128}}, {-0.1, {40, 100, 190}}, {-0.02, {80, 150, 220}}},
            {{0.0, {70, 140, 60}},
             {0.25, {110, 170, 70}},
             {0.5, {140, 115, 80}},
             {0.8, {225, 225, 225}},
             {1.0, {255, 255, 255}}},
            {30, 90, 230},
            {0, 0, 0}};
    }
};

/// Throws std::invalid_argument unless thresholds increase strictly and cover their ranges.
inline void validate(const ColorMap& map) {
    auto check = [](const std::vector<ColorStop>& stops, double lo, double hi, const char* name) {
        if (stops.empty()) throw std::invalid_argument(std::string(name) + " stops are empty");
        if (stops.front().at != lo) throw std::invalid_argument(std::string(name) + " stops must start at " + std::to_string(lo));
        for (std::size_t i = 1; i < stops.size(); ++i)
            if (!(stops[i].at > stops[i - 1].at))
                throw std::invalid_argument(std::string(name) + " thresholds must increase strictly");
        if (stops.back().at > hi) throw std::invalid_argument(std::string(name) + " stops exceed their range");
    };
    check(map.sea_stops, -1.0, 0.0, "sea");
    check(map.land_stops, 0.0, 1.0, "land");
}

namespace detail {

inline std::uint8_t lerp_channel(std::uint8_t a, std::uint8_t b, double t) {
    return static_cast<std::uint8_t>(std::lround(double(a) + (double(b) - double(a)) * t));
}

inline Rgb lookup(const std::vector<ColorStop>& stops, double h) {
    if (h <= stops.front().at) return stops.front().color;
    for (std::size_t i = 1; i < stops.size(); ++i) {
        if (h < stops[i].at) {
            const auto& lo = stops[i - 1];
            const auto& hi = stops[i];
            const double t = (h - lo.at) / (hi.at - lo.at);
            return {lerp_channel(lo.color.r, hi.color.r, t), lerp_channel(lo.color.g, hi.color.g, t),
                    lerp_channel(lo.color.b, hi.color.b, t)};
        }
    }
    return stops.back().color;
}

}  // namespace detail

inline Rgb colorize(const RasterCell& cell, const ColorMap& map) {
    if (!cell.has_data) return map.no_data;
    if (cell.h < 0.0) return detail::lookup(map.sea_stops, cell.h);
    if (cell.is_river) {
        // Lighter with altitude; never reaches white.
        const double t = std::clamp(cell.h, 0.0, 1.0) * 0.5;
        return {detail::lerp_channel(map.river_color.r, 255, t), detail::lerp_channel(map.river_color.g, 255, t),
                detail::lerp_channel(map.river_color.b, 255, t)};
    }
    return detail::lookup(map.land_stops, cell.h);
}

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  ///< row-major, 3 bytes per pixel

    bool operator==(const Image&) const = default;
};

inline Image to_image(const Raster& raster, const ColorMap& map = ColorMap::defaults()) {
    Image img{raster.width, raster.height, {}};
    img.rgb.reserve(raster.cells.size() * 3);
    for (const auto& c : raster.cells) {
        const Rgb px = colorize(c, map);
        img.rgb.push_back(px.r);
        img.rgb.push_back(px.g);
        img.rgb.push_back(px.b);
    }
    return img;
}

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ImageFormat { Ppm, Png };

inline std::vector<std::uint8_t> encode_ppm(const Image& img) {
    if (img.width <= 0 || img.height <= 0) throw std::invalid_argument("cannot encode an empty image");
    const std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.rgb.begin(), img.rgb.end());
    return out;
}

namespace detail {

inline void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

inline void put_chunk(std::vector<std::uint8_t>& out, std::string_view type, const std::vector<std::uint8_t>& data) {
    put_be32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t start = out.size();
    out.insert(out.end(), type.begin(), type.end());
    out.insert(out.end(), data.begin(), data.end());
    const auto crc = crc32(0L, out.data() + start, static_cast<uInt>(out.size() - start));
    put_be32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace detail

inline std::vector<std::uint8_t> encode_png(const Image& img) {
    if (img.width <= 0 || img.height <= 0) throw std::invalid_argument("cannot encode an empty image");
    std::vector<std::uint8_t> out{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

    std::vector<std::uint8_t> ihdr;
    detail::put_be32(ihdr, static_cast<std::uint32_t>(img.width));
    detail::put_be32(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});
    detail::put_chunk(out, "IHDR", ihdr);

    const std::size_t stride = std::size_t(img.width) * 3;
    std::vector<std::uint8_t> raw;
    raw.reserve((stride + 1) * std::size_t(img.height));
    for (int row = 0; row < img.height; ++row) {
        raw.push_back(0);
        const auto* begin = img.rgb.data() + std::size_t(row) * stride;
        raw.insert(raw.end(), begin, begin + stride);
    }
    uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> packed(packed_size);
    if (compress2(packed.data(), &packed_size, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK)
        throw std::runtime_error("zlib compression failed");
    packed.resize(packed_size);
    detail::put_chunk(out, "IDAT", packed);
    detail::put_chunk(out, "IEND", {});
    return out;
}

inline void write_bytes(const std::vector<std::uint8_t>& bytes, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("failed writing '" + path + "'");
}

inline void write_image(const Image& img, const std::string& path, ImageFormat format) {
    write_bytes(format == ImageFormat::Ppm ? encode_ppm(img) : encode_png(img), path);
}

inline void write_image(const Raster& raster, const std::string& path, ImageFormat format,
                        const ColorMap& map = ColorMap::defaults()) {
    if (raster.cells.empty()) throw std::invalid_argument("cannot write an empty raster");
    write_image(to_image(raster, map), path, format);
}

}  // namespace rivermap
