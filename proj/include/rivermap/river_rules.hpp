#pragma once

// Decides whether the new interior edge e3 of a split triangle carries a river.
//
// Labels follow the split of triangle (v0, v1, v2) along e0 = v1-v2 at v3:
//
//          v1
//          | \ e4
//       e2 |  v3            e3 = v0-v3 separates the two halves:
//          | /  \ e5          half A = (v0, v1, v3) with outer edges e2, e4
//          |/e3  \            half B = (v0, v3, v2) with outer edges e1, e5
//          v0-----v2
//              e1
//
// Every rule is invariant under the mirror v1<->v2, e1<->e2, e4<->e5.
//
// Single-river probe table (the far vertex is the corner of the other half
// that is not on e3; the probe is the e3 endpoint not on the river edge):
//
//     river on | far vertex | probe vertex
//     ---------+------------+-------------
//        e1    |     v1     |     v3
//        e2    |     v2     |     v3
//        e4    |     v2     |     v0
//        e5    |     v1     |     v0

#include "config.hpp"
#include "seedmix.hpp"
#include "types.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <utility>

namespace rivermap {

enum class OuterEdge { E1, E2, E4, E5 };

enum class RiverCase {
    NoRiver,
    OneRiver,
    TwoOpposite,
    TwoSameSide,
    Three,
    Islands,
};

struct E3Context {
    Vertex v0, v1, v2, v3;
    Edge e1, e2, e4, e5;
    GenConfig cfg;

    const Edge& edge(OuterEdge which) const noexcept {
        switch (which) {
            case OuterEdge::E1: return e1;
            case OuterEdge::E2: return e2;
            case OuterEdge::E4: return e4;
            case OuterEdge::E5: return e5;
        }
        return e1;
    }

    /// Seed shared by the rules whose random choice involves e3's endpoints.
    double e3_seed() const noexcept { return mix(v0.s, v3.s); }
};

/// The same context seen in a mirror: v1<->v2, e1<->e2, e4<->e5.
inline E3Context mirrored(const E3Context& c) {
    E3Context m = c;
    std::swap(m.v1, m.v2);
    std::swap(m.e1, m.e2);
    std::swap(m.e4, m.e5);
    return m;
}

namespace detail {

inline bool mouth_allowed(const E3Context& c) noexcept {
    if (c.cfg.mouth_probability >= 1.0) return true;
    return std::abs(self_mix(c.e3_seed())) < c.cfg.mouth_probability;
}

inline const Vertex& far_vertex(const E3Context& c, OuterEdge which) noexcept {
    return (which == OuterEdge::E1 || which == OuterEdge::E5) ? c.v1 : c.v2;
}

inline const Vertex& probe_vertex(const E3Context& c, OuterEdge which) noexcept {
    return (which == OuterEdge::E1 || which == OuterEdge::E2) ? c.v3 : c.v0;
}

}  // namespace detail

/// No outer edge has a river: open a river mouth when one end of the split
/// edge is clearly land and the other clearly sea.
inline std::optional<double> case_no_river(const E3Context& c) {
    const auto& k = c.cfg.k;
    const double low_inner = std::min(c.v0.h, c.v3.h);
    auto mouth = [&](const Vertex& land, const Vertex& sea) -> std::optional<double> {
        if (land.h > k.k3 && sea.h < k.k4 && sea.h < c.v0.h && sea.h < c.v3.h) {
            if (!detail::mouth_allowed(c)) return std::nullopt;
            return between(sea.h, low_inner, c.e3_seed());
        }
        return std::nullopt;
    };
    if (auto r = mouth(c.v1, c.v2)) return r;
    return mouth(c.v2, c.v1);
}

/// Exactly one outer edge has a river: maybe extend it across e3, either down
/// toward the sea or upstream.
inline std::optional<double> case_one_river(const E3Context& c, OuterEdge which) {
    assert(c.edge(which).has_river());
    const double r = *c.edge(which).river;
    const Vertex& far = detail::far_vertex(c, which);
    const Vertex& probe = detail::probe_vertex(c, which);
    const double seed = c.e3_seed();

    if (far.h < 0.0 && far.h < r && probe.h > 0.0) return between(far.h, r, seed);
    if (far.h > r && c.v0.h > r && c.v3.h > r) {
        if (std::abs(seed) < c.cfg.k.k5)
            return between(r, std::min({far.h, c.v0.h, c.v3.h}), self_mix(far.s));
    }
    return std::nullopt;
}

/// Rivers on two edges on opposite sides of e3 always connect through it.
inline double case_two_opposite(const E3Context& c, OuterEdge a, OuterEdge b) {
    assert(c.edge(a).has_river() && c.edge(b).has_river());
    const double ra = *c.edge(a).river;
    const double rb = *c.edge(b).river;
    return between(std::min(ra, rb), std::max(ra, rb), c.e3_seed());
}

/// Rivers on two edges of the same half: a branch may enter through e3.
/// Pairs are (e1, e5) and (e2, e4).
inline std::optional<double> case_two_same_side(const E3Context& c, OuterEdge a, OuterEdge b) {
    assert(c.edge(a).has_river() && c.edge(b).has_river());
    const Vertex& far = detail::far_vertex(c, a);
    const double lowest_vertex = std::min({far.h, c.v0.h, c.v3.h});
    const double lowest_river = std::min(*c.edge(a).river, *c.edge(b).river);
    if (lowest_vertex <= lowest_river) return std::nullopt;
    const double branch_chance = c.cfg.k.k6 * distance(c.v1, c.v2);
    if (!(std::abs(c.e3_seed()) < branch_chance)) return std::nullopt;
    return between(lowest_vertex, lowest_river, self_mix(far.s));
}

/// Three outer edges carry rivers (never both e4 and e5): they must meet.
/// `missing` is E4 or E5.
inline double case_three(const E3Context& c, OuterEdge missing) {
    assert(missing == OuterEdge::E4 || missing == OuterEdge::E5);
    // The lone river sits on the half that holds only one river edge.
    const bool lone_is_e1 = missing == OuterEdge::E5;
    const double lone = lone_is_e1 ? *c.e1.river : *c.e2.river;
    const double paired = lone_is_e1 ? std::min(*c.e2.river, *c.e4.river)
                                     : std::min(*c.e1.river, *c.e5.river);
    return between(lone, paired, c.e3_seed());
}

/// Both halves of the hypotenuse carry the forked river (islands variant).
inline std::optional<double> islands_cases(const E3Context& c) {
    assert(c.e4.has_river() && c.e5.has_river());
    const bool r1 = c.e1.has_river();
    const bool r2 = c.e2.has_river();
    if (r1 == r2) return std::nullopt;
    if (r1) return between(*c.e1.river, *c.e4.river, c.e3_seed());
    return between(*c.e2.river, *c.e5.river, c.e3_seed());
}

struct E3Decision {
    RiverCase which;
    std::optional<double> river;
};

/// Dispatches on the set of river-carrying outer edges. Total over all 16 subsets.
inline E3Decision decide_e3(const E3Context& c) {
    const bool r1 = c.e1.has_river();
    const bool r2 = c.e2.has_river();
    const bool r4 = c.e4.has_river();
    const bool r5 = c.e5.has_river();

    if (r4 && r5) return {RiverCase::Islands, islands_cases(c)};

    const int count = int(r1) + int(r2) + int(r4) + int(r5);
    switch (count) {
        case 0:
            return {RiverCase::NoRiver, case_no_river(c)};
        case 1: {
            const OuterEdge which = r1 ? OuterEdge::E1
                                  : r2 ? OuterEdge::E2
                                  : r4 ? OuterEdge::E4
                                       : OuterEdge::E5;
            return {RiverCase::OneRiver, case_one_river(c, which)};
        }
        case 2:
            if (r1 && r5) return {RiverCase::TwoSameSide, case_two_same_side(c, OuterEdge::E1, OuterEdge::E5)};
            if (r2 && r4) return {RiverCase::TwoSameSide, case_two_same_side(c, OuterEdge::E2, OuterEdge::E4)};
            if (r1 && r2) return {RiverCase::TwoOpposite, case_two_opposite(c, OuterEdge::E1, OuterEdge::E2)};
            if (r1 && r4) return {RiverCase::TwoOpposite, case_two_opposite(c, OuterEdge::E1, OuterEdge::E4)};
            return {RiverCase::TwoOpposite, case_two_opposite(c, OuterEdge::E2, OuterEdge::E5)};
        default:
            // Three edges, and not both e4 and e5.
            return {RiverCase::Three, case_three(c, r4 ? OuterEdge::E5 : OuterEdge::E4)};
    }
}

inline std::optional<double> e3_attribute(const E3Context& c) { return decide_e3(c).river; }

}  // namespace rivermap
