#pragma once

// Right-isosceles triangle subdivision with co-generated rivers.
//
// A triangle is (v0, v1, v2) with the right angle at v0 and hypotenuse
// e0 = v1-v2; e1 = v0-v2 and e2 = v0-v1 are the legs. Splitting e0 at its
// midpoint v3 halves the triangle. Everything produced on e0 (v3 and the two
// half edges) is a function of v1, v2 and e0 alone, so the triangle on the
// other side of e0 computes bit-identical values.

#include "config.hpp"
#include "river_rules.hpp"
#include "seedmix.hpp"
#include "types.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <utility>

namespace rivermap {

struct Triangle {
    Vertex v0, v1, v2;
    Edge e0, e1, e2;

    bool operator==(const Triangle&) const = default;
};

/// Displacement scale for a new vertex between v1 and v2.
inline double delta(const Vertex& v1, const Vertex& v2, const GenConfig& cfg) noexcept {
    return cfg.k.k1 * distance(v1, v2) + cfg.k.k2 * std::abs(v1.h - v2.h);
}

/// Edge seed, available to both triangles that share the edge.
inline double edge_seed(const Vertex& v1, const Vertex& v2) noexcept { return mix(v1.s, v2.s); }

/// True when a river crossing v1-v2 at altitude `river` continues on the v1 half.
/// Ties go to the endpoint with the smaller seed encoding, then the smaller (x, y).
inline bool river_takes_first_half(const Vertex& v1, const Vertex& v2, double river) noexcept {
    const double d1 = std::abs(river - v1.h);
    const double d2 = std::abs(river - v2.h);
    if (d1 != d2) return d1 < d2;
    const auto s1 = encode_seed(v1.s);
    const auto s2 = encode_seed(v2.s);
    if (s1 != s2) return s1 < s2;
    return std::tie(v1.x, v1.y) < std::tie(v2.x, v2.y);
}

struct EdgeSplit {
    Vertex v3;
    Edge e4;  ///< v1-v3 half
    Edge e5;  ///< v3-v2 half
};

namespace detail {

/// Shared split logic. `plain_h` is the altitude v3 gets (before displacement)
/// when no river crosses e0.
inline EdgeSplit split_edge(const Vertex& v1, const Vertex& v2, const Edge& e0, double x, double y,
                            double plain_h, const GenConfig& cfg) {
    EdgeSplit out;
    out.v3.x = x;
    out.v3.y = y;
    out.v3.s = mix(v1.s, v2.s);
    const double displacement = delta(v1, v2, cfg) * out.v3.s;

    double h = plain_h;
    if (e0.river) {
        const double r = *e0.river;
        const bool first = river_takes_first_half(v1, v2, r);
        const Vertex& other = first ? v2 : v1;
        if (cfg.islands() && r < cfg.k.k7 && std::abs(self_mix(edge_seed(v1, v2))) < cfg.k.k8) {
            out.e4.river = r;
            out.e5.river = r;
            h = (r + r + other.h) / 3.0;
        } else {
            (first ? out.e4 : out.e5).river = r;
            h = (r + other.h) / 2.0;
        }
    }
    out.v3.h = cap_altitude(h + displacement);
    return out;
}

}  // namespace detail

/// Splits the hypotenuse v1-v2 at its midpoint. Reads nothing but v1, v2 and e0.
inline EdgeSplit split_hypotenuse(const Vertex& v1, const Vertex& v2, const Edge& e0,
                                  const GenConfig& cfg) {
    return detail::split_edge(v1, v2, e0, (v1.x + v2.x) / 2.0, (v1.y + v2.y) / 2.0,
                              (v1.h + v2.h) / 2.0, cfg);
}

/// Halves `t`. Child a has hypotenuse t.e2 (v0-v1), child b has hypotenuse t.e1 (v0-v2);
/// both are right-angled at the new vertex v3 and keep the parent's winding.
inline std::pair<Triangle, Triangle> subdivide(const Triangle& t, const GenConfig& cfg) {
    const EdgeSplit sp = split_hypotenuse(t.v1, t.v2, t.e0, cfg);
    const E3Context ctx{t.v0, t.v1, t.v2, sp.v3, t.e1, t.e2, sp.e4, sp.e5, cfg};
    const Edge e3{e3_attribute(ctx)};

    Triangle a{sp.v3, t.v0, t.v1, t.e2, sp.e4, e3};
    Triangle b{sp.v3, t.v2, t.v0, t.e1, e3, sp.e5};
    return {a, b};
}

/// Corner vertices (0,0), (1,0), (0,1), (1,1) seeded from the master seed.
inline std::array<Vertex, 4> root_corners(const GenConfig& cfg) {
    constexpr std::array<std::array<double, 2>, 4> xy{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}};
    std::array<Vertex, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        out[i].x = xy[i][0];
        out[i].y = xy[i][1];
        out[i].h = cfg.corner_altitudes ? (*cfg.corner_altitudes)[i]
                                        : derive_unit(cfg.master_seed, 2 * i + 1);
        out[i].s = derive_unit(cfg.master_seed, 2 * i + 2);
    }
    return out;
}

/// Two triangles tiling the unit square, sharing the (0,1)-(1,0) diagonal as hypotenuse.
inline std::pair<Triangle, Triangle> root_config(const GenConfig& cfg) {
    const auto c = root_corners(cfg);
    Triangle lower{c[0], c[2], c[1], {}, {}, {}};
    Triangle upper{c[3], c[1], c[2], {}, {}, {}};
    return {lower, upper};
}

inline double signed_area(const Vertex& a, const Vertex& b, const Vertex& c) noexcept {
    return ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)) / 2.0;
}

}  // namespace rivermap
