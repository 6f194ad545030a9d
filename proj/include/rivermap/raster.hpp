#pragma once

// Pixel grids and the mapping from map space to pixels.
//
// A render covers a window of a conceptual full-map grid of res_x * res_y
// pixels. Pixel (i, j) of that grid spans [i/res_x, (i+1)/res_x) x
// [j/res_y, (j+1)/res_y); y grows downward. A zoomed viewport is such a
// window at a larger resolution, so a zoomed render and a crop of the full
// render at the same resolution are the same computation restricted to
// different pixels.

#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace rivermap {

inline constexpr std::int64_t kMaxResolution = std::int64_t{1} << 40;

struct RasterCell {
    double h = 0.0;
    bool is_river = false;
    bool has_data = false;

    bool operator==(const RasterCell&) const = default;
};

struct Raster {
    int width = 0;
    int height = 0;
    std::vector<RasterCell> cells;

    Raster() = default;
    Raster(int w, int h) : width(w), height(h), cells(std::size_t(w) * std::size_t(h)) {}

    RasterCell& at(int col, int row) { return cells[std::size_t(row) * width + col]; }
    const RasterCell& at(int col, int row) const { return cells[std::size_t(row) * width + col]; }

    bool operator==(const Raster&) const = default;
};

/// Copies the w*h block at (col, row) out of `src`.
inline Raster crop(const Raster& src, int col, int row, int w, int h) {
    if (col < 0 || row < 0 || col + w > src.width || row + h > src.height)
        throw std::out_of_range("crop outside raster");
    Raster out(w, h);
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) out.at(i, j) = src.at(col + i, row + j);
    return out;
}

struct Viewport {
    double center_x = 0.5;
    double center_y = 0.5;
    double zoom = 1.0;  ///< 1 shows the whole map
    int width_px = 0;
    int height_px = 0;
};

struct PixelWindow {
    std::int64_t res_x = 0;
    std::int64_t res_y = 0;
    std::int64_t origin_x = 0;
    std::int64_t origin_y = 0;
    int width = 0;
    int height = 0;

    static PixelWindow full_map(int w, int h) { return {w, h, 0, 0, w, h}; }

    bool operator==(const PixelWindow&) const = default;
};

inline void validate(const PixelWindow& win) {
    if (win.width <= 0 || win.height <= 0)
        throw std::invalid_argument("viewport must have non-zero pixel dimensions (got " +
                                    std::to_string(win.width) + "x" + std::to_string(win.height) + ")");
    if (win.res_x <= 0 || win.res_y <= 0 || win.res_x > kMaxResolution || win.res_y > kMaxResolution)
        throw std::invalid_argument("effective resolution out of range (zoom too large or too small)");
}

/// Snaps a viewport onto the pixel lattice of the full map at resolution
/// zoom * size. The window is [center - 1/(2 zoom), center + 1/(2 zoom)] per
/// axis; pixels falling outside the map carry no data.
inline PixelWindow pixel_window(const Viewport& vp) {
    if (vp.width_px <= 0 || vp.height_px <= 0)
        throw std::invalid_argument("viewport must have non-zero pixel dimensions (got " +
                                    std::to_string(vp.width_px) + "x" + std::to_string(vp.height_px) + ")");
    if (!(vp.zoom > 0.0) || !std::isfinite(vp.zoom)) throw std::invalid_argument("zoom must be positive");
    PixelWindow win;
    win.width = vp.width_px;
    win.height = vp.height_px;
    const double rx = vp.zoom * vp.width_px;
    const double ry = vp.zoom * vp.height_px;
    if (rx > double(kMaxResolution) || ry > double(kMaxResolution))
        throw std::invalid_argument("zoom too large for this viewport size");
    win.res_x = std::llround(rx);
    win.res_y = std::llround(ry);
    win.origin_x = std::llround(vp.center_x * double(win.res_x) - vp.width_px / 2.0);
    win.origin_y = std::llround(vp.center_y * double(win.res_y) - vp.height_px / 2.0);
    validate(win);
    return win;
}

/// Number of halvings per axis so that lattice spacing 2^-k is at most one pixel.
inline int lattice_bits(const PixelWindow& win) noexcept {
    const std::int64_t r = std::max(win.res_x, win.res_y);
    int k = 0;
    while ((std::int64_t{1} << k) < r) ++k;
    return k;
}

/// Axis-aligned map-space rectangle used for culling.
struct Bounds {
    double min_x, min_y, max_x, max_y;

    bool intersects(double x0, double y0, double x1, double y1) const noexcept {
        return x1 >= min_x && x0 <= max_x && y1 >= min_y && y0 <= max_y;
    }
};

/// The window in map space, padded by one pixel on every side.
inline Bounds culling_bounds(const PixelWindow& win) noexcept {
    const double px = 1.0 / double(win.res_x);
    const double py = 1.0 / double(win.res_y);
    return {double(win.origin_x) * px - px, double(win.origin_y) * py - py,
            double(win.origin_x + win.width) * px + px, double(win.origin_y + win.height) * py + py};
}

/// Per-pixel winner selection. Several generated points may compete for one
/// pixel; the one closest to the pixel centre wins, ties broken by (x, y),
/// whatever order the offers arrive in.
class CellPicker {
public:
    explicit CellPicker(const PixelWindow& win, bool locked = false)
        : win_(win), slots_(std::size_t(win.width) * std::size_t(win.height)) {
        if (locked) locks_ = std::vector<std::mutex>(kStripes);
    }

    const PixelWindow& window() const noexcept { return win_; }

    /// Offers a point for global pixel (gcol, grow). Out-of-window pixels are ignored.
    void offer(std::int64_t gcol, std::int64_t grow, double x, double y, double h, bool river) {
        const std::int64_t col = gcol - win_.origin_x;
        const std::int64_t row = grow - win_.origin_y;
        if (col < 0 || row < 0 || col >= win_.width || row >= win_.height) return;
        const double cx = (double(gcol) + 0.5) / double(win_.res_x);
        const double cy = (double(grow) + 0.5) / double(win_.res_y);
        const double dx = x - cx;
        const double dy = y - cy;
        const Slot cand{dx * dx + dy * dy, x, y, h, river};
        const std::size_t idx = std::size_t(row) * std::size_t(win_.width) + std::size_t(col);
        if (locks_.empty()) {
            take_if_better(slots_[idx], cand);
        } else {
            std::lock_guard<std::mutex> guard(locks_[std::size_t(row) % kStripes]);
            take_if_better(slots_[idx], cand);
        }
    }

    Raster finish() const {
        Raster out(win_.width, win_.height);
        for (std::size_t i = 0; i < slots_.size(); ++i) {
            const Slot& s = slots_[i];
            if (s.dist2 == kEmpty) continue;
            out.cells[i] = RasterCell{s.h, s.river, true};
        }
        return out;
    }

private:
    static constexpr double kEmpty = std::numeric_limits<double>::infinity();
    static constexpr std::size_t kStripes = 64;

    struct Slot {
        double dist2 = kEmpty;
        double x = 0.0, y = 0.0, h = 0.0;
        bool river = false;
    };

    static void take_if_better(Slot& cur, const Slot& cand) noexcept {
        if (cand.dist2 < cur.dist2 ||
            (cand.dist2 == cur.dist2 && (cand.x < cur.x || (cand.x == cur.x && cand.y < cur.y))))
            cur = cand;
    }

    PixelWindow win_;
    std::vector<Slot> slots_;
    std::vector<std::mutex> locks_;
};

}  // namespace rivermap
