#include <doctest.h>

#include <algorithm>
#include <random>

#include "wavejets/spatial.hpp"

using namespace wavejets;

TEST_SUITE("spatial") {

TEST_CASE("single point and empty cloud") {
    PointCloud one;
    one.positions.emplace_back(1.0, 2.0, 3.0);
    const SpatialIndex index(one);
    const auto hits = index.radius_query({1.0, 2.0, 3.0}, 0.5);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == 0);
    CHECK(index.radius_query({5.0, 5.0, 5.0}, 0.5).empty());

    CHECK_THROWS_AS(SpatialIndex(PointCloud{}), std::invalid_argument);
}

TEST_CASE("radius query equals brute force") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    PointCloud cloud;
    for (int i = 0; i < 10000; ++i) {
        cloud.positions.emplace_back(unit(rng), unit(rng), unit(rng));
    }
    const SpatialIndex index(cloud);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Vector3d center(unit(rng), unit(rng), unit(rng));
        const double radius = 0.05 + 0.5 * std::abs(unit(rng));
        auto got = index.radius_query(center, radius);
        std::sort(got.begin(), got.end());
        std::vector<int> want;
        for (int i = 0; i < 10000; ++i) {
            if ((cloud.positions[i] - center).norm() <= radius) {
                want.push_back(i);
            }
        }
        CHECK(got == want);
    }
}

TEST_CASE("closed-ball boundary inclusion and duplicates") {
    PointCloud cloud;
    cloud.positions.emplace_back(0.0, 0.0, 0.0);
    cloud.positions.emplace_back(1.0, 0.0, 0.0);
    cloud.positions.emplace_back(1.0, 0.0, 0.0); // duplicate position
    const SpatialIndex index(cloud);
    auto hits = index.radius_query({0.0, 0.0, 0.0}, 1.0);
    std::sort(hits.begin(), hits.end());
    CHECK(hits == std::vector<int>{0, 1, 2});

    // radius smaller than the nearest gap: singleton
    CHECK(index.radius_query({0.0, 0.0, 0.0}, 0.5) == std::vector<int>{0});
}

TEST_CASE("build is deterministic for a fixed input ordering") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    PointCloud cloud;
    for (int i = 0; i < 500; ++i) {
        cloud.positions.emplace_back(unit(rng), unit(rng), unit(rng));
    }
    const SpatialIndex a(cloud);
    const SpatialIndex b(cloud);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Vector3d c(unit(rng), unit(rng), unit(rng));
        CHECK(a.radius_query(c, 0.4) == b.radius_query(c, 0.4));
    }
}

} // TEST_SUITE
