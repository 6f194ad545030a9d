#pragma once

// Viewport rendering of the right-triangle map.
//
// The recursion descends d = 2k levels, where 2^-k is the first power of two
// not larger than one pixel. Level-d triangles have legs of length 2^-k, so
// splitting their hypotenuses yields exactly one point per cell of a 2^k
// lattice, at the cell centres. Each point is written to the pixel that
// contains it. Triangles whose bounding box misses the padded window are
// never expanded, so the cost tracks the viewport's pixel count rather than
// the zoom factor.

#include "config.hpp"
#include "core.hpp"
#include "network.hpp"
#include "raster.hpp"
#include "traversal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace rivermap {

namespace detail {

/// Global pixel index of lattice coordinate `v` (an odd multiple of 2^-(k+1)).
inline std::int64_t lattice_pixel(double v, int k, std::int64_t res) noexcept {
    const auto m = static_cast<__int128>(std::ldexp(v, k + 1));
    return static_cast<std::int64_t>((m * res) >> (k + 1));
}

struct SquarePolicy {
    using Node = Triangle;

    const GenConfig& cfg;
    Bounds bounds;
    int depth;
    int bits;
    std::int64_t res_x, res_y;

    bool visible(const Triangle& t) const noexcept {
        const double x0 = std::min({t.v0.x, t.v1.x, t.v2.x});
        const double x1 = std::max({t.v0.x, t.v1.x, t.v2.x});
        const double y0 = std::min({t.v0.y, t.v1.y, t.v2.y});
        const double y1 = std::max({t.v0.y, t.v1.y, t.v2.y});
        return bounds.intersects(x0, y0, x1, y1);
    }

    bool is_leaf(const Triangle&, int level) const noexcept { return level == depth; }

    std::pair<Triangle, Triangle> expand(const Triangle& t) const { return subdivide(t, cfg); }

    template <class Fn>
    void for_each_edge(const Triangle& t, Fn&& fn) const {
        fn(t.v1, t.v2, t.e0);
        fn(t.v0, t.v2, t.e1);
        fn(t.v0, t.v1, t.e2);
    }

    void emit(const Triangle& t, CellPicker& picker) const {
        const EdgeSplit sp = split_hypotenuse(t.v1, t.v2, t.e0, cfg);
        picker.offer(lattice_pixel(sp.v3.x, bits, res_x), lattice_pixel(sp.v3.y, bits, res_y),
                     sp.v3.x, sp.v3.y, sp.v3.h, t.e0.has_river());
    }
};

}  // namespace detail

/// Subdivision depth used for a window.
inline int render_depth(const PixelWindow& win) noexcept { return 2 * lattice_bits(win); }

/// Renders an explicit window of the full-map pixel grid.
inline RenderResult render_window(const PixelWindow& win, const GenConfig& cfg,
                                  const RenderOptions& opts = {}) {
    validate(win);
    validate(cfg);
    const int bits = lattice_bits(win);
    const detail::SquarePolicy policy{cfg, culling_bounds(win), 2 * bits, bits, win.res_x, win.res_y};
    const auto [lower, upper] = root_config(cfg);
    return traverse(policy, std::vector<Triangle>{lower, upper}, win, opts);
}

/// River network over the leaves rendered for `win`.
inline RiverNetwork render_network(const PixelWindow& win, const GenConfig& cfg) {
    validate(win);
    validate(cfg);
    const int bits = lattice_bits(win);
    const detail::SquarePolicy policy{cfg, culling_bounds(win), 2 * bits, bits, win.res_x, win.res_y};
    const auto [lower, upper] = root_config(cfg);
    return river_network(policy, std::vector<Triangle>{lower, upper});
}

inline RenderResult render_region(const Viewport& vp, const GenConfig& cfg,
                                  const RenderOptions& opts = {}) {
    return render_window(pixel_window(vp), cfg, opts);
}

}  // namespace rivermap
