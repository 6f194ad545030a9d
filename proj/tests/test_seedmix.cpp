#include <rivermap/core.hpp>
#include <rivermap/seedmix.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace rivermap;

// Values from tests/oracles/formula_oracle.py.
TEST_CASE("mix matches the reference values") {
    CHECK(mix(0.25, -0.7) == -0.7432812106932487);
    CHECK(mix(0.0, 0.0) == 0.5835305447465289);
    CHECK(mix(0.3, 0.3) == 0.7869121281582272);
    CHECK(mix(1.0, -1.0) == 0.5107342184042494);
    CHECK(mix(0.5, 0.125) == -0.7555510294778427);
    CHECK(self_mix(0.3) == 0.7869121281582272);
}

TEST_CASE("mix is symmetric and lands in [-1, 1)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100000; ++i) {
        const double a = u(rng), b = u(rng);
        const double m = mix(a, b);
        REQUIRE(m == mix(b, a));
        REQUIRE(m >= -1.0);
        REQUIRE(m < 1.0);
    }
}

TEST_CASE("mix spreads roughly uniformly") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::array<int, 10> bins{};
    const int n = 200000;
    for (int i = 0; i < n; ++i) ++bins[std::size_t((mix(u(rng), u(rng)) + 1.0) * 5.0)];
    for (int b : bins) CHECK(std::abs(b - n / 10) < n / 100);
}

TEST_CASE("seeds equal after fixed-point encoding mix identically") {
    const double s = 0.123456789;
    CHECK(encode_seed(s) == encode_seed(s + 1e-12));
    CHECK(mix(s, 0.5) == mix(s + 1e-12, 0.5));
}

TEST_CASE("between reference values") {
    CHECK(between(0.4, -0.2, 0.0) == 0.1);
    CHECK(between(0.4, -0.2, 1.0) == 0.4);
    CHECK(between(0.4, -0.2, -1.0) == -0.2);
}

TEST_CASE("between stays within its endpoints") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100000; ++i) {
        const double x = u(rng), y = u(rng), s = u(rng);
        const double b = between(x, y, s);
        REQUIRE(b >= std::min(x, y));
        REQUIRE(b <= std::max(x, y));
    }
    CHECK(between(0.3, 0.3, 0.9) == 0.3);
}

TEST_CASE("delta reference value") {
    const GenConfig cfg;
    const Vertex a{0.0, 0.0, 0.5, 0.0};
    const Vertex b{1.0, 0.0, -0.5, 0.0};
    CHECK(delta(a, b, cfg) == 0.8700000000000001);
}

TEST_CASE("derived root values depend on the master seed only") {
    GenConfig a, b;
    a.master_seed = b.master_seed = 99;
    CHECK(root_corners(a) == root_corners(b));
    b.master_seed = 100;
    CHECK_FALSE(root_corners(a) == root_corners(b));
    for (const auto& v : root_corners(a)) {
        CHECK(v.h >= -1.0);
        CHECK(v.h < 1.0);
        CHECK(v.s >= -1.0);
        CHECK(v.s < 1.0);
    }
}
