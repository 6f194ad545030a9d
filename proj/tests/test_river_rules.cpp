#include "support.hpp"

#include <rivermap/river_rules.hpp>

#include <catch_amalgamated.hpp>

#include <array>
#include <bit>
#include <random>

using namespace rivermap;
using testing::context;
using testing::river;

// Expected values come from tests/oracles/formula_oracle.py.
namespace {
constexpr double kE3Seed = 0.3971525648179566;  // mix(0.11, -0.05)
}

TEST_CASE("the shared e3 seed") { CHECK(context(0, 0, 0, 0).e3_seed() == kE3Seed); }

TEST_CASE("no river: a mouth opens between land and sea") {
    const auto c = context(0.2, 0.5, -0.3, 0.15);
    const auto d = decide_e3(c);
    CHECK(d.which == RiverCase::NoRiver);
    REQUIRE(d.river);
    CHECK(*d.river == -0.08909466093535692);
    CHECK(*d.river >= -0.3);
    CHECK(*d.river <= 0.15);
    CHECK(e3_attribute(mirrored(c)) == d.river);
}

TEST_CASE("no river: no mouth unless both ends qualify") {
    CHECK_FALSE(case_no_river(context(0.2, 0.05, -0.3, 0.15)));   // land too low
    CHECK_FALSE(case_no_river(context(0.2, 0.5, -0.05, 0.15)));   // sea too shallow
    CHECK_FALSE(case_no_river(context(0.2, 0.5, -0.3, -0.4)));    // v3 below the sea end
    CHECK_FALSE(case_no_river(context(-0.5, 0.5, -0.3, 0.15)));   // v0 below the sea end
}

TEST_CASE("no river: the mouth probability gate") {
    auto c = context(0.2, 0.5, -0.3, 0.15);
    c.cfg.mouth_probability = 0.0;
    CHECK_FALSE(case_no_river(c));
    const double gate = std::abs(self_mix(kE3Seed));
    c.cfg.mouth_probability = std::nextafter(gate, 1.0);
    CHECK(case_no_river(c));
    c.cfg.mouth_probability = gate;
    CHECK_FALSE(case_no_river(c));
}

TEST_CASE("one river: extends upstream") {
    auto c = context(0.4, 0.5, 0.0, 0.3);
    c.e1 = river(0.2);
    const auto d = decide_e3(c);
    CHECK(d.which == RiverCase::OneRiver);
    REQUIRE(d.river);
    CHECK(*d.river == 0.2516468128881364);
    CHECK(*d.river >= 0.2);
    CHECK(*d.river <= 0.3);
    CHECK(e3_attribute(mirrored(c)) == d.river);

    c.cfg.k.k5 = 0.3;  // below |e3 seed|
    CHECK_FALSE(e3_attribute(c));
}

TEST_CASE("one river: no upstream extension unless every vertex is above it") {
    auto c = context(0.15, 0.5, 0.0, 0.3);
    c.e1 = river(0.2);
    CHECK_FALSE(e3_attribute(c));
    c = context(0.4, 0.1, 0.0, 0.3);
    c.e1 = river(0.2);
    CHECK_FALSE(e3_attribute(c));
}

TEST_CASE("one river: flows downhill into the sea") {
    auto c = context(0.0, -0.1, 0.0, 0.3);
    c.e1 = river(0.2);
    const auto r = e3_attribute(c);
    REQUIRE(r);
    CHECK(*r == 0.04060355937642871);
    CHECK(*r >= -0.1);
    CHECK(*r <= 0.2);

    auto e4 = context(0.3, 0.0, -0.1, 0.0);  // far v2, probe v0
    e4.e4 = river(0.2);
    CHECK(e3_attribute(e4) == 0.04060355937642871);
    CHECK(e3_attribute(mirrored(e4)) == 0.04060355937642871);

    auto blocked = c;
    blocked.v3.h = -0.05;  // probe is not land
    CHECK_FALSE(e3_attribute(blocked));
}

TEST_CASE("one river: far and probe vertices per edge") {
    const auto c = context(0, 0, 0, 0);
    CHECK(&detail::far_vertex(c, OuterEdge::E1) == &c.v1);
    CHECK(&detail::far_vertex(c, OuterEdge::E2) == &c.v2);
    CHECK(&detail::far_vertex(c, OuterEdge::E4) == &c.v2);
    CHECK(&detail::far_vertex(c, OuterEdge::E5) == &c.v1);
    CHECK(&detail::probe_vertex(c, OuterEdge::E1) == &c.v3);
    CHECK(&detail::probe_vertex(c, OuterEdge::E2) == &c.v3);
    CHECK(&detail::probe_vertex(c, OuterEdge::E4) == &c.v0);
    CHECK(&detail::probe_vertex(c, OuterEdge::E5) == &c.v0);
}

TEST_CASE("two rivers on opposite sides always connect") {
    const double expected = 0.28747141250190494;
    for (auto [a, b] : std::array<std::pair<unsigned, unsigned>, 3>{{{1u, 2u}, {1u, 4u}, {2u, 8u}}}) {
        auto c = context(0.9, 0.9, 0.9, 0.9);
        auto set = [&](unsigned bit, double r) {
            if (bit == 1) c.e1 = river(r);
            if (bit == 2) c.e2 = river(r);
            if (bit == 4) c.e4 = river(r);
            if (bit == 8) c.e5 = river(r);
        };
        set(a, 0.1);
        set(b, 0.5);
        const auto d = decide_e3(c);
        CHECK(d.which == RiverCase::TwoOpposite);
        CHECK(d.river == expected);
        set(a, 0.5);
        set(b, 0.1);
        CHECK(e3_attribute(c) == expected);
    }
}

TEST_CASE("two rivers on the same side may branch") {
    auto c = context(0.7, 0.6, 0.0, 0.65);
    c.e1 = river(0.2);
    c.e5 = river(0.35);
    const auto d = decide_e3(c);
    CHECK(d.which == RiverCase::TwoSameSide);
    REQUIRE(d.river);
    CHECK(*d.river == 0.3934127484474545);
    CHECK(*d.river >= 0.2);
    CHECK(*d.river <= 0.6);
    CHECK(e3_attribute(mirrored(c)) == d.river);

    auto no_room = c;
    no_room.v3.h = 0.1;
    CHECK_FALSE(e3_attribute(no_room));

    auto no_chance = c;
    no_chance.cfg.k.k6 = 0.0;
    CHECK_FALSE(e3_attribute(no_chance));
}

TEST_CASE("three rivers meet") {
    auto c = context(0.9, 0.9, 0.9, 0.9);
    c.e1 = river(0.1);
    c.e2 = river(0.5);
    c.e4 = river(0.3);
    const auto d = decide_e3(c);
    CHECK(d.which == RiverCase::Three);
    CHECK(d.river == 0.1937357062509525);
    CHECK(e3_attribute(mirrored(c)) == d.river);
}

TEST_CASE("islands: a forked edge joins the single river on one side") {
    auto c = context(-0.9, -0.9, -0.9, -0.9);
    c.e4 = river(-0.4);
    c.e5 = river(-0.4);
    c.e1 = river(-0.2);
    const auto d = decide_e3(c);
    CHECK(d.which == RiverCase::Islands);
    CHECK(d.river == -0.2937357062509525);
    CHECK(e3_attribute(mirrored(c)) == d.river);

    c.e2 = river(-0.3);
    CHECK_FALSE(e3_attribute(c));
    c.e1 = {};
    c.e2 = {};
    CHECK_FALSE(e3_attribute(c));
}

TEST_CASE("dispatch covers every subset of river edges") {
    std::mt19937_64 rng(1);
    for (unsigned mask = 0; mask < 16; ++mask) {
        const auto d = decide_e3(testing::random_context(rng, mask));
        const int n = std::popcount(mask);
        if ((mask & 12) == 12)
            CHECK(d.which == RiverCase::Islands);
        else if (n == 0)
            CHECK(d.which == RiverCase::NoRiver);
        else if (n == 1)
            CHECK(d.which == RiverCase::OneRiver);
        else if (n == 2)
            CHECK(d.which == (mask == 9 || mask == 6 ? RiverCase::TwoSameSide : RiverCase::TwoOpposite));
        else
            CHECK(d.which == RiverCase::Three);
    }
}

namespace {

/// Interval a present result must fall in, computed from the inputs alone.
std::pair<double, double> allowed_range(const E3Context& c) {
    double lo = 1.0, hi = -1.0;
    auto widen = [&](double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    for (const auto* e : {&c.e1, &c.e2, &c.e4, &c.e5})
        if (e->river) widen(*e->river);
    if (hi < lo) {  // no rivers: between the sea end and the lower inner vertex
        widen(std::min(c.v1.h, c.v2.h));
        widen(std::min(c.v0.h, c.v3.h));
        return {lo, hi};
    }
    // A single or same-side river may reach up to the lowest surrounding vertex,
    // or down to a sea vertex.
    const int n = int(c.e1.has_river()) + int(c.e2.has_river()) + int(c.e4.has_river()) + int(c.e5.has_river());
    if (n <= 2) {
        for (double h : {c.v0.h, c.v1.h, c.v2.h, c.v3.h}) widen(h);
    }
    return {lo, hi};
}

}  // namespace

TEST_CASE("results stay in range and ignore mirroring") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200000; ++i) {
        auto c = testing::random_context(rng, unsigned(i % 16));
        if (i % 3 == 0) c.cfg.mouth_probability = 0.5;
        const auto r = e3_attribute(c);
        REQUIRE(r == e3_attribute(mirrored(c)));
        if (r) {
            const auto [lo, hi] = allowed_range(c);
            REQUIRE(*r >= lo);
            REQUIRE(*r <= hi);
        }
    }
}
