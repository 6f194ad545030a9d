#pragma once

#include <rivermap/river_rules.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace testing {

inline rivermap::Vertex vtx(double h, double s, double x = 0.0, double y = 0.0) { return {x, y, h, s}; }

inline rivermap::Edge river(double r) { return rivermap::Edge{r}; }

/// Context with the seeds the frozen oracle values were computed from.
/// v0 = (0,0), v1 = (0,1), v2 = (1,0), v3 = (0.5,0.5).
inline rivermap::E3Context context(double h0, double h1, double h2, double h3) {
    rivermap::E3Context c;
    c.v0 = vtx(h0, 0.11, 0.0, 0.0);
    c.v1 = vtx(h1, -0.42, 0.0, 1.0);
    c.v2 = vtx(h2, 0.73, 1.0, 0.0);
    c.v3 = vtx(h3, -0.05, 0.5, 0.5);
    return c;
}

/// Random context with an arbitrary subset of river edges given by `mask` (bit 0 e1, 1 e2, 2 e4, 3 e5).
inline rivermap::E3Context random_context(std::mt19937_64& rng, unsigned mask) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    rivermap::E3Context c;
    c.v0 = vtx(u(rng), u(rng), 0.0, 0.0);
    c.v1 = vtx(u(rng), u(rng), 0.0, 1.0);
    c.v2 = vtx(u(rng), u(rng), 1.0, 0.0);
    c.v3 = vtx(u(rng), u(rng), 0.5, 0.5);
    if (mask & 1) c.e1 = river(u(rng));
    if (mask & 2) c.e2 = river(u(rng));
    if (mask & 4) c.e4 = river(u(rng));
    if (mask & 8) c.e5 = river(u(rng));
    return c;
}

}  // namespace testing
