#pragma once

// Pixel-level audit of a rendered river network.
//
// River pixels are grouped into components with 8-neighbour adjacency. The
// non-river pixels are then grouped with 4-neighbour adjacency (the dual
// connectivity); a non-river group that does not reach the raster border is a
// hole, and the river component that encloses it contains a cycle.

#include "raster.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace rivermap {

struct RiverComponent {
    std::size_t pixels = 0;
    double min_altitude = std::numeric_limits<double>::infinity();
    bool touches_sea = false;
    bool has_cycle = false;
};

struct RiverStats {
    std::size_t river_pixels = 0;
    std::size_t land_river_pixels = 0;
    std::vector<RiverComponent> components;

    std::size_t touching_sea() const {
        return std::size_t(std::count_if(components.begin(), components.end(),
                                         [](const auto& c) { return c.touches_sea; }));
    }
    std::size_t cyclic() const {
        return std::size_t(std::count_if(components.begin(), components.end(),
                                         [](const auto& c) { return c.has_cycle; }));
    }
    /// Cyclic components whose lowest pixel is not below `threshold`.
    std::size_t cyclic_at_or_above(double threshold) const {
        return std::size_t(std::count_if(components.begin(), components.end(), [&](const auto& c) {
            return c.has_cycle && !(c.min_altitude < threshold);
        }));
    }
};

inline RiverStats analyze_rivers(const Raster& raster) {
    const int w = raster.width;
    const int h = raster.height;
    const auto idx = [w](int c, int r) { return std::size_t(r) * std::size_t(w) + std::size_t(c); };
    const auto is_river = [&](int c, int r) {
        const auto& cell = raster.at(c, r);
        return cell.has_data && cell.is_river;
    };
    const auto is_sea = [&](int c, int r) {
        const auto& cell = raster.at(c, r);
        return cell.has_data && cell.h < 0.0;
    };

    RiverStats st;
    constexpr std::int32_t kNone = -1;
    std::vector<std::int32_t> label(raster.cells.size(), kNone);
    std::vector<std::pair<int, int>> stack;

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!is_river(c, r) || label[idx(c, r)] != kNone) continue;
            const auto id = static_cast<std::int32_t>(st.components.size());
            RiverComponent comp;
            label[idx(c, r)] = id;
            stack.assign(1, {c, r});
            while (!stack.empty()) {
                const auto [pc, pr] = stack.back();
                stack.pop_back();
                ++comp.pixels;
                const double alt = raster.at(pc, pr).h;
                comp.min_altitude = std::min(comp.min_altitude, alt);
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int nc = pc + dc, nr = pr + dr;
                        if (nc < 0 || nr < 0 || nc >= w || nr >= h) continue;
                        if (is_sea(nc, nr)) comp.touches_sea = true;
                        if ((dc || dr) && is_river(nc, nr) && label[idx(nc, nr)] == kNone) {
                            label[idx(nc, nr)] = id;
                            stack.push_back({nc, nr});
                        }
                    }
                }
            }
            st.components.push_back(comp);
        }
    }

    for (const auto& cell : raster.cells) {
        if (cell.has_data && cell.is_river) {
            ++st.river_pixels;
            if (cell.h >= 0.0) ++st.land_river_pixels;
        }
    }

    // Holes: 4-connected background regions that never reach the border.
    std::vector<std::uint8_t> seen(raster.cells.size(), 0);
    constexpr std::array<std::pair<int, int>, 4> kFour{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (is_river(c, r) || seen[idx(c, r)]) continue;
            bool reaches_border = false;
            std::int32_t enclosing = kNone;
            seen[idx(c, r)] = 1;
            stack.assign(1, {c, r});
            while (!stack.empty()) {
                const auto [pc, pr] = stack.back();
                stack.pop_back();
                if (pc == 0 || pr == 0 || pc == w - 1 || pr == h - 1) reaches_border = true;
                for (const auto& [dc, dr] : kFour) {
                    const int nc = pc + dc, nr = pr + dr;
                    if (nc < 0 || nr < 0 || nc >= w || nr >= h) continue;
                    if (is_river(nc, nr)) {
                        enclosing = label[idx(nc, nr)];
                    } else if (!seen[idx(nc, nr)]) {
                        seen[idx(nc, nr)] = 1;
                        stack.push_back({nc, nr});
                    }
                }
            }
            if (!reaches_border && enclosing != kNone) st.components[std::size_t(enclosing)].has_cycle = true;
        }
    }
    return st;
}

}  // namespace rivermap
