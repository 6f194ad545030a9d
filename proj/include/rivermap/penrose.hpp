#pragma once

// Kite-shaped maps built from Robinson triangles.
//
// Acute triangles have angles 36-72-72 (legs = phi * base); obtuse ones
// 36-36-108 (base = phi * legs). Each split cuts the triangle's longest side
// at ratio phi:1 and yields one acute and one obtuse child. The longer piece
// always lies toward the side's "long end", so every side carries a fixed
// cut point no matter which neighbour splits it first.
//
// Vertex roles in RobinsonTriangle:
//   Acute  (apex = 36 deg corner): splits apex-p, long end apex, opposite q.
//   Obtuse (apex = 108 deg corner): splits p-q, long end p, opposite apex.
//
// Transition table (L = long end, S = short end, O = opposite, P = cut point):
//
//   Acute (apex L, p S, q O)  ->  Acute  (apex O, p P, q S)
//                                 Obtuse (apex P, p L, q O)
//   Obtuse(apex O, p L, q S)  ->  Acute  (apex L, p P, q O)
//                                 Obtuse (apex P, p S, q O)
//
// The river rules see the split as a right-triangle split with v1 = S,
// v2 = L, v0 = O, v3 = P: e1 = O-L, e2 = O-S, e4 = S-P, e5 = P-L, e3 = O-P.
// The same-side / opposite-side relations the rules rely on are preserved.

#include "config.hpp"
#include "core.hpp"
#include "network.hpp"
#include "raster.hpp"
#include "river_rules.hpp"
#include "traversal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace rivermap {

inline constexpr double kPhi = 1.6180339887498949;
inline constexpr double kPhiMinusOne = 0.6180339887498949;  // also 1/phi
inline constexpr double kTwoMinusPhi = 0.3819660112501051;

enum class RobinsonKind { Acute, Obtuse };
enum class Chirality { Left, Right };

struct RobinsonTriangle {
    RobinsonKind kind = RobinsonKind::Acute;
    Vertex apex, p, q;
    Edge apex_p, apex_q, pq;

    /// Handedness of (apex, p, q); a mirror image has the other one.
    Chirality chirality() const noexcept {
        return signed_area(apex, p, q) > 0.0 ? Chirality::Left : Chirality::Right;
    }

    bool operator==(const RobinsonTriangle&) const = default;
};

/// Altitude of a cut point nearer to v1 than v2, before rivers are considered.
inline double weighted_altitude(const Vertex& v1, const Vertex& v2, double s3, const GenConfig& cfg) noexcept {
    return cap_altitude(kPhiMinusOne * v1.h + kTwoMinusPhi * v2.h + delta(v1, v2, cfg) * s3);
}

namespace detail {

struct RobinsonFrame {
    const Vertex& long_end;
    const Vertex& short_end;
    const Vertex& opposite;
    const Edge& split;     // long_end - short_end
    const Edge& opp_long;  // opposite - long_end
    const Edge& opp_short; // opposite - short_end
};

inline RobinsonFrame frame(const RobinsonTriangle& t) noexcept {
    if (t.kind == RobinsonKind::Acute) return {t.apex, t.p, t.q, t.apex_p, t.apex_q, t.pq};
    return {t.p, t.q, t.apex, t.pq, t.apex_p, t.apex_q};
}

}  // namespace detail

/// Cut point and half edges for the triangle's longest side.
inline EdgeSplit split_long_side(const RobinsonTriangle& t, const GenConfig& cfg) {
    const auto f = detail::frame(t);
    const Vertex& near = f.short_end;
    const Vertex& far = f.long_end;
    const double x = far.x + (near.x - far.x) * kPhiMinusOne;
    const double y = far.y + (near.y - far.y) * kPhiMinusOne;
    return detail::split_edge(near, far, f.split, x, y, kPhiMinusOne * near.h + kTwoMinusPhi * far.h, cfg);
}

/// Returns {acute child, obtuse child}.
inline std::pair<RobinsonTriangle, RobinsonTriangle> split_robinson(const RobinsonTriangle& t, const GenConfig& cfg) {
    const auto f = detail::frame(t);
    const EdgeSplit sp = split_long_side(t, cfg);
    const E3Context ctx{f.opposite, f.short_end, f.long_end, sp.v3, f.opp_long, f.opp_short, sp.e4, sp.e5, cfg};
    const Edge e3{e3_attribute(ctx)};

    RobinsonTriangle acute, obtuse;
    acute.kind = RobinsonKind::Acute;
    obtuse.kind = RobinsonKind::Obtuse;
    if (t.kind == RobinsonKind::Acute) {
        acute.apex = f.opposite, acute.p = sp.v3, acute.q = f.short_end;
        acute.apex_p = e3, acute.apex_q = f.opp_short, acute.pq = sp.e4;
        obtuse.apex = sp.v3, obtuse.p = f.long_end, obtuse.q = f.opposite;
        obtuse.apex_p = sp.e5, obtuse.apex_q = e3, obtuse.pq = f.opp_long;
    } else {
        acute.apex = f.long_end, acute.p = sp.v3, acute.q = f.opposite;
        acute.apex_p = sp.e5, acute.apex_q = f.opp_long, acute.pq = e3;
        obtuse.apex = sp.v3, obtuse.p = f.short_end, obtuse.q = f.opposite;
        obtuse.apex_p = sp.e4, obtuse.apex_q = e3, obtuse.pq = f.opp_short;
    }
    return {acute, obtuse};
}

/// Length of the side the triangle splits next, which is also its diameter.
inline double long_side(const RobinsonTriangle& t) noexcept {
    const auto f = detail::frame(t);
    return distance(f.long_end, f.short_end);
}

/// Kite vertices {tip, right, notch, left}: tip angle 72 deg, notch 144 deg,
/// axis vertical, width 1, centred in the unit square.
inline std::array<Vertex, 4> kite_corners(const GenConfig& cfg) {
    const double sin36 = std::sqrt(10.0 - 2.0 * std::sqrt(5.0)) / 4.0;
    const double cos36 = kPhi / 2.0;
    const double scale = 1.0 / (2.0 * kPhi * sin36);
    const double axis = kPhi * scale;
    const double top = (1.0 - axis) / 2.0;
    const double half_width = kPhi * sin36 * scale;
    const double side_y = top + kPhi * cos36 * scale;

    std::array<Vertex, 4> v;
    v[0].x = 0.5, v[0].y = top;
    v[1].x = 0.5 + half_width, v[1].y = side_y;
    v[2].x = 0.5, v[2].y = top + axis;
    v[3].x = 0.5 - half_width, v[3].y = side_y;
    for (std::size_t i = 0; i < 4; ++i) {
        v[i].h = cfg.corner_altitudes ? (*cfg.corner_altitudes)[i] : derive_unit(cfg.master_seed, 2 * i + 1);
        v[i].s = derive_unit(cfg.master_seed, 2 * i + 2);
    }
    return v;
}

/// The two acute triangles forming the kite; they share the tip-notch axis.
inline std::pair<RobinsonTriangle, RobinsonTriangle> kite_roots(const GenConfig& cfg) {
    const auto c = kite_corners(cfg);
    RobinsonTriangle right{RobinsonKind::Acute, c[0], c[1], c[2], {}, {}, {}};
    RobinsonTriangle left{RobinsonKind::Acute, c[0], c[3], c[2], {}, {}, {}};
    return {right, left};
}

/// Area of the kite in map units.
inline double kite_area(const GenConfig& cfg = {}) {
    const auto c = kite_corners(cfg);
    return std::abs(signed_area(c[0], c[1], c[2])) + std::abs(signed_area(c[0], c[3], c[2]));
}

namespace detail {

inline constexpr int kMaxKiteDepth = 160;

struct KitePolicy {
    using Node = RobinsonTriangle;

    const GenConfig& cfg;
    Bounds bounds;
    double pixel;
    PixelWindow win;

    bool visible(const RobinsonTriangle& t) const noexcept {
        const double x0 = std::min({t.apex.x, t.p.x, t.q.x});
        const double x1 = std::max({t.apex.x, t.p.x, t.q.x});
        const double y0 = std::min({t.apex.y, t.p.y, t.q.y});
        const double y1 = std::max({t.apex.y, t.p.y, t.q.y});
        return bounds.intersects(x0, y0, x1, y1);
    }

    bool is_leaf(const RobinsonTriangle& t, int level) const noexcept {
        return level >= kMaxKiteDepth || long_side(t) <= pixel;
    }

    std::pair<RobinsonTriangle, RobinsonTriangle> expand(const RobinsonTriangle& t) const {
        return split_robinson(t, cfg);
    }

    template <class Fn>
    void for_each_edge(const RobinsonTriangle& t, Fn&& fn) const {
        fn(t.apex, t.p, t.apex_p);
        fn(t.apex, t.q, t.apex_q);
        fn(t.p, t.q, t.pq);
    }

    /// Every pixel whose centre lies in the leaf takes the leaf's cut point.
    void emit(const RobinsonTriangle& t, CellPicker& picker) const {
        const EdgeSplit sp = split_long_side(t, cfg);
        const bool river = frame(t).split.has_river();
        const double rx = double(win.res_x), ry = double(win.res_y);
        const double x0 = std::min({t.apex.x, t.p.x, t.q.x}), x1 = std::max({t.apex.x, t.p.x, t.q.x});
        const double y0 = std::min({t.apex.y, t.p.y, t.q.y}), y1 = std::max({t.apex.y, t.p.y, t.q.y});
        const auto c0 = std::max<std::int64_t>(std::int64_t(std::ceil(x0 * rx - 0.5)), win.origin_x);
        const auto c1 = std::min<std::int64_t>(std::int64_t(std::floor(x1 * rx - 0.5)), win.origin_x + win.width - 1);
        const auto r0 = std::max<std::int64_t>(std::int64_t(std::ceil(y0 * ry - 0.5)), win.origin_y);
        const auto r1 = std::min<std::int64_t>(std::int64_t(std::floor(y1 * ry - 0.5)), win.origin_y + win.height - 1);
        for (std::int64_t r = r0; r <= r1; ++r) {
            for (std::int64_t c = c0; c <= c1; ++c) {
                const Vertex centre{(double(c) + 0.5) / rx, (double(r) + 0.5) / ry, 0.0, 0.0};
                const double a = signed_area(t.apex, t.p, centre);
                const double b = signed_area(t.p, t.q, centre);
                const double d = signed_area(t.q, t.apex, centre);
                const bool inside = (a >= 0 && b >= 0 && d >= 0) || (a <= 0 && b <= 0 && d <= 0);
                if (inside) picker.offer(c, r, sp.v3.x, sp.v3.y, sp.v3.h, river);
            }
        }
    }
};

inline KitePolicy kite_policy(const PixelWindow& win, const GenConfig& cfg) {
    return {cfg, culling_bounds(win), std::min(1.0 / double(win.res_x), 1.0 / double(win.res_y)), win};
}

}  // namespace detail

/// Renders a window of the kite map. Pixels outside the kite carry no data.
inline RenderResult render_kite_window(const PixelWindow& win, const GenConfig& cfg, const RenderOptions& opts = {}) {
    validate(win);
    validate(cfg);
    const auto [a, b] = kite_roots(cfg);
    return traverse(detail::kite_policy(win, cfg), std::vector<RobinsonTriangle>{a, b}, win, opts);
}

inline RenderResult render_kite(const Viewport& vp, const GenConfig& cfg, const RenderOptions& opts = {}) {
    return render_kite_window(pixel_window(vp), cfg, opts);
}

inline RiverNetwork kite_network(const PixelWindow& win, const GenConfig& cfg) {
    validate(win);
    validate(cfg);
    const auto [a, b] = kite_roots(cfg);
    return river_network(detail::kite_policy(win, cfg), std::vector<RobinsonTriangle>{a, b});
}

}  // namespace rivermap
