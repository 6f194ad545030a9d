#pragma once

// Single entry point over both map shapes.

#include "config.hpp"
#include "network.hpp"
#include "penrose.hpp"
#include "raster.hpp"
#include "region.hpp"
#include "traversal.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace rivermap {

enum class Shape { Square, Kite };

/// What the user picks with a variant name: base, islands, penrose, penrose-islands.
struct MapStyle {
    Shape shape = Shape::Square;
    Variant variant = Variant::Base;

    bool operator==(const MapStyle&) const = default;
};

inline std::optional<MapStyle> parse_style(std::string_view name) {
    if (name == "base") return MapStyle{Shape::Square, Variant::Base};
    if (name == "islands") return MapStyle{Shape::Square, Variant::IslandsInFjords};
    if (name == "penrose") return MapStyle{Shape::Kite, Variant::Base};
    if (name == "penrose-islands") return MapStyle{Shape::Kite, Variant::IslandsInFjords};
    return std::nullopt;
}

inline std::string to_string(const MapStyle& s) {
    if (s.shape == Shape::Square) return to_string(s.variant);
    return s.variant == Variant::Base ? "penrose" : "penrose-islands";
}

inline RenderResult render_map(const PixelWindow& win, const GenConfig& cfg, Shape shape,
                               const RenderOptions& opts = {}) {
    return shape == Shape::Square ? render_window(win, cfg, opts) : render_kite_window(win, cfg, opts);
}

inline RenderResult render_map(const Viewport& vp, const GenConfig& cfg, Shape shape, const RenderOptions& opts = {}) {
    return render_map(pixel_window(vp), cfg, shape, opts);
}

inline RiverNetwork map_network(const PixelWindow& win, const GenConfig& cfg, Shape shape) {
    return shape == Shape::Square ? render_network(win, cfg) : kite_network(win, cfg);
}

}  // namespace rivermap
