#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "shep/rng.hpp"
#include "shep/targets.hpp"

using namespace shep;

TEST_SUITE("targets") {

TEST_CASE("neighbor set uses a strict radius") {
    double lambda = 2.5;
    std::vector<Vec2> herders = {{2.5, 0.0}, {1.0, 0.0}, {0.0, 3.0}};
    auto n = neighbor_herders({0.0, 0.0}, herders, lambda);
    REQUIRE(n.size() == 1);  // the herder at exactly lambda is excluded
    CHECK(n[0] == 1);

    CHECK(neighbor_herders({0.0, 0.0}, {}, lambda).empty());
}

TEST_CASE("neighbor set matches a brute-force filter") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        Vec2 t{u(rng), u(rng)};
        std::vector<Vec2> herders;
        for (int i = 0; i < 5; ++i) herders.push_back({u(rng), u(rng)});
        auto got = neighbor_herders(t, herders, 2.5);
        std::vector<std::size_t> expect;
        for (std::size_t i = 0; i < herders.size(); ++i) {
            if ((herders[i] - t).norm() < 2.5) expect.push_back(i);
        }
        CHECK(got == expect);
    }
}

TEST_CASE("drift hand values") {
    TargetParams p{2.5, 3.0, 0.5};
    SUBCASE("isolated target is still") {
        Vec2 v = drift({0.0, 0.0}, {}, {}, p);
        CHECK(v.x == 0.0);
        CHECK(v.y == 0.0);
    }
    SUBCASE("one herder at lambda/2 due west pushes east at beta*lambda/2") {
        std::vector<Vec2> herders = {{-1.25, 0.0}};
        Vec2 v = drift({0.0, 0.0}, herders, {}, p);
        CHECK(v.x == doctest::Approx(3.0 * 1.25).epsilon(1e-12));
        CHECK(v.y == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("symmetric herders cancel the north-south component") {
        std::vector<Vec2> herders = {{-1.0, 1.0}, {-1.0, -1.0}};
        Vec2 v = drift({0.0, 0.0}, herders, {}, p);
        CHECK(v.y == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(v.x > 0.0);
    }
}

TEST_CASE("drift is continuous across the influence boundary") {
    TargetParams p{2.5, 3.0, 0.0};
    std::vector<Vec2> just_inside = {{2.5 * (1.0 - 1e-9), 0.0}};
    Vec2 v = drift({0.0, 0.0}, just_inside, {}, p);
    CHECK(v.norm() < 1e-7);
}

TEST_CASE("drift is translation invariant and rotation equivariant") {
    TargetParams p{2.5, 3.0, 0.0};
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        Vec2 t{u(rng), u(rng)};
        std::vector<Vec2> herders = {{u(rng), u(rng)}, {u(rng), u(rng)}};
        Vec2 base = drift(t, herders, {}, p);

        Vec2 shift{u(rng), u(rng)};
        std::vector<Vec2> shifted = {herders[0] + shift, herders[1] + shift};
        Vec2 moved = drift(t + shift, shifted, {}, p);
        CHECK((base - moved).norm() < 1e-9);

        Rotation rot{u(rng)};
        std::vector<Vec2> rotated = {rot.apply(herders[0]), rot.apply(herders[1])};
        Vec2 spun = drift(rot.apply(t), rotated, {}, p);
        CHECK((rot.apply(base) - spun).norm() < 1e-9);
    }
}

TEST_CASE("with beta = 0 and no obstacles targets are stationary") {
    // beta = 0 is outside the config bounds but the kernel must still honor it
    TargetParams p{2.5, 0.0, 0.0};
    std::vector<Vec2> herders = {{0.5, 0.0}, {-0.3, 0.8}};
    CHECK(drift({0.0, 0.0}, herders, {}, p).norm() == 0.0);
}

TEST_CASE("embodied drift") {
    TargetParams p{0.5, 3.0, 0.0};
    PairRepulsion rep{1.0, 0.45};
    SUBCASE("single target equals the plain drift") {
        std::vector<TargetState> ts = {{{0.3, 0.2}, false}};
        std::vector<Vec2> herders = {{0.5, 0.5}};
        Vec2 a = embodied_drift(0, ts, herders, {}, p, rep);
        Vec2 b = drift(ts[0].position, herders, {}, p);
        CHECK((a - b).norm() == 0.0);
    }
    SUBCASE("pair term vanishes at the cutoff distance") {
        std::vector<TargetState> ts = {{{0.0, 0.0}, false}, {{0.45, 0.0}, false}};
        Vec2 a = embodied_drift(0, ts, {}, {}, p, rep);
        CHECK(a.norm() == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("three targets in a line match the pairwise sum") {
        std::vector<TargetState> ts = {{{0.0, 0.0}, false},
                                       {{0.3, 0.0}, false},
                                       {{-0.2, 0.0}, false}};
        for (std::size_t a = 0; a < ts.size(); ++a) {
            Vec2 got = embodied_drift(a, ts, {}, {}, p, rep);
            Vec2 expect{0.0, 0.0};
            for (std::size_t j = 0; j < ts.size(); ++j) {
                if (j != a) expect += pair_force(rep, ts[a].position, ts[j].position);
            }
            CHECK((got - expect).norm() < 1e-12);
        }
    }
}

TEST_CASE("noise increment") {
    SUBCASE("zero diffusion yields exact zero") {
        auto rng = make_stream(1, "target-noise", 0);
        for (int i = 0; i < 10; ++i) {
            Vec2 w = noise_increment(rng, 0.0, 0.01);
            CHECK(w.x == 0.0);
            CHECK(w.y == 0.0);
        }
    }
    SUBCASE("sample std matches sqrt(2 D dt)") {
        auto rng = make_stream(123, "target-noise", 0);
        const int n = 1000000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            Vec2 w = noise_increment(rng, 0.5, 0.01);
            sum += w.x + w.y;
            sum_sq += w.x * w.x + w.y * w.y;
        }
        double mean = sum / (2.0 * n);
        double sd = std::sqrt(sum_sq / (2.0 * n) - mean * mean);
        CHECK(sd == doctest::Approx(0.1).epsilon(0.005));
        CHECK(std::abs(mean) < 3e-4);
    }
    SUBCASE("same seed reproduces the sequence") {
        auto a = make_stream(9, "target-noise", 4);
        auto b = make_stream(9, "target-noise", 4);
        for (int i = 0; i < 100; ++i) {
            Vec2 wa = noise_increment(a, 0.5, 0.01);
            Vec2 wb = noise_increment(b, 0.5, 0.01);
            CHECK(wa.x == wb.x);
            CHECK(wa.y == wb.y);
        }
    }
}

} // TEST_SUITE
