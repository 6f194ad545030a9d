#include <rivermap/penrose.hpp>

#include <catch_amalgamated.hpp>

#include <functional>
#include <random>

using namespace rivermap;

namespace {

std::array<double, 3> sides(const RobinsonTriangle& t) {
    return {distance(t.apex, t.p), distance(t.apex, t.q), distance(t.p, t.q)};
}

/// Relative error of the golden-ratio side relation for the triangle's kind.
double golden_error(const RobinsonTriangle& t) {
    const auto [ap, aq, pq] = sides(t);
    if (t.kind == RobinsonKind::Acute)
        return std::max(std::abs(ap - aq) / aq, std::abs(ap / pq - kPhi) / kPhi);
    return std::max(std::abs(ap - aq) / aq, std::abs(pq / ap - kPhi) / kPhi);
}

RobinsonTriangle mirror_x(RobinsonTriangle t) {
    for (Vertex* v : {&t.apex, &t.p, &t.q}) v->x = -v->x;
    return t;
}

}  // namespace

TEST_CASE("weighted altitude of a plain cut") {
    const GenConfig cfg;
    const Vertex v1{0.0, 0.0, 1.0, 0.0};
    const Vertex v2{1.0, 0.0, 0.0, 0.0};
    CHECK(std::abs(weighted_altitude(v1, v2, 0.0, cfg) - 0.6180339887498949) < 1e-12);
    CHECK(weighted_altitude(v1, v2, 1.0, cfg) == 1.0);  // capped

    const Vertex c1{0.0, 0.0, 0.375, 0.0}, c2{1.0, 0.0, 0.375, 0.0};
    CHECK(weighted_altitude(c1, c2, 0.0, cfg) == 0.375);
    CHECK(weighted_altitude(v1, v2, 0.0, cfg) != weighted_altitude(v2, v1, 0.0, cfg));
}

TEST_CASE("a plain cut leans toward the nearer endpoint") {
    const GenConfig cfg;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100000; ++i) {
        const Vertex near{u(rng), u(rng), u(rng), 0.0};
        const Vertex far{u(rng), u(rng), u(rng), 0.0};
        if (near.h == far.h) continue;
        const double h = weighted_altitude(near, far, 0.0, cfg);
        REQUIRE(std::abs(h - near.h) < std::abs(h - far.h));
    }
}

TEST_CASE("kite geometry") {
    const auto c = kite_corners(GenConfig{});
    CHECK(c[0].x == 0.5);
    CHECK(c[2].x == 0.5);
    CHECK(std::abs(c[1].x - 1.0) < 1e-15);
    CHECK(std::abs(c[3].x) < 1e-15);
    CHECK(std::abs(c[0].y + c[2].y - 1.0) < 1e-15);
    CHECK(std::abs(kite_area() - 0.42532540417602) < 1e-12);
    const auto [right, left] = kite_roots(GenConfig{});
    CHECK(right.chirality() != left.chirality());
    CHECK(golden_error(right) < 1e-12);
    CHECK(golden_error(left) < 1e-12);
}

TEST_CASE("every split keeps golden-ratio proportions") {
    const GenConfig cfg;
    const auto [right, left] = kite_roots(cfg);
    double worst = 0.0;
    std::size_t count = 0;
    std::function<void(const RobinsonTriangle&, int)> walk = [&](const RobinsonTriangle& t, int depth) {
        worst = std::max(worst, golden_error(t));
        ++count;
        if (depth == 10) return;
        const auto [a, o] = split_robinson(t, cfg);
        CHECK(a.kind == RobinsonKind::Acute);
        CHECK(o.kind == RobinsonKind::Obtuse);
        const double parent = std::abs(signed_area(t.apex, t.p, t.q));
        CHECK(std::abs(std::abs(signed_area(a.apex, a.p, a.q)) + std::abs(signed_area(o.apex, o.p, o.q)) - parent) <=
              1e-12 * parent);
        walk(a, depth + 1);
        walk(o, depth + 1);
    };
    walk(right, 0);
    walk(left, 0);
    CHECK(count == 2 * ((1u << 11) - 1));
    CHECK(worst < 1e-9);
}

TEST_CASE("neighbours sharing a side cut it at the same point") {
    // The two roots share the tip-notch axis; descend until both sides split it.
    const GenConfig cfg;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const Vertex a{u(rng), u(rng), u(rng), u(rng)};
        const Vertex b{u(rng), u(rng), u(rng), u(rng)};
        const Vertex o1{u(rng), u(rng), u(rng), u(rng)};
        const Vertex o2{u(rng), u(rng), u(rng), u(rng)};
        Edge shared;
        if (i % 2) shared.river = u(rng);
        // Acute splits apex-p with long end apex; obtuse splits p-q with long end p.
        const RobinsonTriangle t1{RobinsonKind::Acute, a, b, o1, shared, {}, {}};
        const RobinsonTriangle t2{RobinsonKind::Obtuse, o2, a, b, {}, {}, shared};
        const auto s1 = split_long_side(t1, cfg);
        const auto s2 = split_long_side(t2, cfg);
        REQUIRE(s1.v3 == s2.v3);
        REQUIRE(s1.e4 == s2.e4);
        REQUIRE(s1.e5 == s2.e5);
    }
}

TEST_CASE("a mirrored triangle splits into mirrored children") {
    GenConfig cfg;
    cfg.master_seed = 17;
    const auto [right, left] = kite_roots(cfg);
    std::function<void(const RobinsonTriangle&, int)> walk = [&](const RobinsonTriangle& t, int depth) {
        const auto m = mirror_x(t);
        REQUIRE(m.chirality() != t.chirality());
        const auto [a, o] = split_robinson(t, cfg);
        const auto [ma, mo] = split_robinson(m, cfg);
        REQUIRE(mirror_x(a) == ma);
        REQUIRE(mirror_x(o) == mo);
        if (depth < 7) {
            walk(a, depth + 1);
            walk(o, depth + 1);
        }
    };
    walk(right, 0);
    walk(left, 0);
}

TEST_CASE("handedness of children") {
    // Acute parent: acute child keeps it, obtuse child flips. Obtuse parent: both keep it.
    const GenConfig cfg;
    const auto [right, left] = kite_roots(cfg);
    std::function<void(const RobinsonTriangle&, int)> walk = [&](const RobinsonTriangle& t, int depth) {
        const auto [a, o] = split_robinson(t, cfg);
        REQUIRE(a.chirality() == t.chirality());
        REQUIRE((o.chirality() == t.chirality()) == (t.kind == RobinsonKind::Obtuse));
        if (depth < 8) {
            walk(a, depth + 1);
            walk(o, depth + 1);
        }
    };
    walk(right, 0);
    walk(left, 0);
}

TEST_CASE("kite render masks everything outside the kite") {
    GenConfig cfg;
    cfg.master_seed = 3;
    const int size = 200;
    const auto r = render_kite({0.5, 0.5, 1.0, size, size}, cfg);
    std::size_t no_data = 0;
    for (const auto& c : r.raster.cells) no_data += !c.has_data;
    CHECK(std::abs(double(no_data) / double(size * size) - (1.0 - kite_area())) < 0.01);
    CHECK_FALSE(r.raster.at(0, 0).has_data);
    CHECK(r.raster.at(size / 2, size / 2).has_data);
}

TEST_CASE("kite renders are thread independent and crop consistently") {
    GenConfig cfg;
    cfg.master_seed = 12;
    cfg.variant = Variant::IslandsInFjords;
    const auto full = render_kite_window(PixelWindow::full_map(160, 160), cfg, {1});
    CHECK(render_kite_window(PixelWindow::full_map(160, 160), cfg, {4}).raster == full.raster);
    const PixelWindow win{160, 160, 50, 70, 40, 30};
    CHECK(render_kite_window(win, cfg).raster == crop(full.raster, 50, 70, 40, 30));
}

TEST_CASE("kite zoom 2 equals the crop of a double-resolution render") {
    GenConfig cfg;
    cfg.master_seed = 21;
    const int size = 48;
    const auto full = render_kite({0.5, 0.5, 1.0, 2 * size, 2 * size}, cfg).raster;
    for (auto [cx, cy] : std::array<std::pair<double, double>, 3>{{{0.5, 0.5}, {0.3, 0.4}, {0.7, 0.72}}}) {
        const Viewport vp{cx, cy, 2.0, size, size};
        const auto win = pixel_window(vp);
        REQUIRE(render_kite(vp, cfg).raster == crop(full, int(win.origin_x), int(win.origin_y), size, size));
    }
    CHECK(render_kite({0.5, 0.5, 1.0, size, size}, cfg).raster == render_kite({0.5, 0.5, 1.0, size, size}, cfg).raster);
}

TEST_CASE("kite river networks are acyclic in the base variant") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        GenConfig cfg;
        cfg.master_seed = seed;
        const auto net = kite_network(PixelWindow::full_map(127, 127), cfg);
        CHECK(net.cyclic() == 0);
        CHECK(net.unmatched_links == 0);
    }
}

TEST_CASE("zero-pixel kite viewports are rejected") {
    CHECK_THROWS_AS(render_kite({0.5, 0.5, 1.0, 0, 5}, GenConfig{}), std::invalid_argument);
}
