#pragma once

#include <cmath>
#include <optional>

namespace rivermap {

/// A lattice point: map-space position, altitude in [-1, 1] and seed in [-1, 1].
struct Vertex {
    double x = 0.0;
    double y = 0.0;
    double h = 0.0;
    double s = 0.0;

    bool operator==(const Vertex&) const = default;
};

/// Edge attributes. The endpoints live in the owning triangle; an edge only
/// carries what both adjacent triangles must agree on.
struct Edge {
    /// Altitude at which a river crosses this edge, if one does.
    std::optional<double> river;

    bool has_river() const noexcept { return river.has_value(); }
    bool operator==(const Edge&) const = default;
};

inline double distance(const Vertex& a, const Vertex& b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline double cap_altitude(double h) noexcept {
    return h < -1.0 ? -1.0 : (h > 1.0 ? 1.0 : h);
}

}  // namespace rivermap
