#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include <Eigen/Geometry>

#include "test_util.hpp"
#include "wavejets/directions.hpp"
#include "wavejets/regression.hpp"
#include "wavejets/synthetic.hpp"

using namespace wavejets;
using testutil::kPi;

namespace {

Neighborhood neighborhood_of(const std::vector<Eigen::Vector3d>& points,
                             const LocalFrame& frame, double radius) {
    std::vector<int> ids(points.size());
    std::iota(ids.begin(), ids.end(), 0);
    return polar_coords(frame, points, ids, radius);
}

/// L1 objective of Eq-style weighted fit: sum w_i |z_i - model(r_i, theta_i)|.
double l1_objective(const Neighborhood& neigh, const WavejetCoeffs& c) {
    double obj = 0.0;
    for (size_t i = 0; i < neigh.polar.size(); ++i) {
        const auto& p = neigh.polar[i];
        const double model = c.evaluate(p.x() / neigh.radius, p.y());
        obj += neigh.weights[i] * std::abs(p.z() - model);
    }
    return obj;
}

std::vector<Eigen::Vector3d> sample_graph(
    const std::function<double(double, double)>& f, double radius, int n) {
    std::vector<Eigen::Vector3d> pts;
    const double golden = 2.399963229728653;
    for (int i = 0; i < n; ++i) {
        const double r = radius * std::sqrt((i + 0.5) / n);
        const double t = i * golden;
        const double x = r * std::cos(t), y = r * std::sin(t);
        pts.emplace_back(x, y, f(x, y));
    }
    return pts;
}

} // namespace

TEST_SUITE("regression") {

TEST_CASE("build_frame: exact plane") {
    std::vector<Eigen::Vector3d> pts;
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j)
            pts.emplace_back(0.1 * i, 0.1 * j, 0.0);
    const auto frame = build_frame({0.0, 0.0, 0.0}, pts, 0.5);
    CHECK(std::abs(std::abs(frame.normal.z()) - 1.0) < 1e-10);
    // orthonormal right-handed
    CHECK(frame.e1.dot(frame.e2) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(frame.e1.cross(frame.e2).dot(frame.normal) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("build_frame: shallow graph normal within 2 degrees") {
    const auto f = [](double x, double y) { return 0.05 * x + 0.08 * y; };
    const auto pts = sample_graph(f, 0.1, 200);
    const auto frame =
        build_frame({0.0, 0.0, 0.0}, pts, 0.1, Eigen::Vector3d(0, 0, 1));
    const Eigen::Vector3d truth =
        Eigen::Vector3d(-0.05, -0.08, 1.0).normalized();
    const double angle = std::acos(std::clamp(frame.normal.dot(truth), -1.0, 1.0));
    CHECK(angle < 2.0 * kPi / 180.0);
}

TEST_CASE("build_frame: degenerate inputs") {
    std::vector<Eigen::Vector3d> two{{0, 0, 0}, {1, 0, 0}};
    CHECK_THROWS_AS(build_frame({0, 0, 0}, two, 1.0), FrameUndefinedError);

    std::vector<Eigen::Vector3d> collinear;
    for (int i = 0; i < 10; ++i) collinear.emplace_back(0.1 * i, 0.0, 0.0);
    CHECK_THROWS_AS(build_frame({0, 0, 0}, collinear, 1.0), FrameUndefinedError);
}

TEST_CASE("polar_coords examples") {
    LocalFrame frame;
    frame.origin = {1.0, 2.0, 3.0};
    const double radius = 0.2;

    std::vector<Eigen::Vector3d> pts{
        frame.origin + radius * frame.e1, // on the e1 axis
        frame.origin + 0.1 * frame.e2,
        frame.origin,
    };
    const auto neigh = neighborhood_of(pts, frame, radius);

    CHECK(neigh.polar[0].x() == doctest::Approx(radius));
    CHECK(neigh.polar[0].y() == doctest::Approx(0.0));
    CHECK(neigh.polar[0].z() == doctest::Approx(0.0));
    CHECK(neigh.weights[0] == doctest::Approx(std::exp(-4.5)));

    CHECK(neigh.polar[1].y() == doctest::Approx(kPi / 2.0));

    CHECK(neigh.polar[2].x() == 0.0);
    CHECK(neigh.polar[2].z() == 0.0);
    CHECK(neigh.weights[2] == 1.0);
}

TEST_CASE("fit: exact monkey saddle recovers phi_33") {
    const auto pts = sample_graph(
        [](double x, double y) { return x * x * x - 3.0 * x * y * y; }, 1.0,
        200);
    FitConfig config;
    config.radius = 1.0;
    config.max_order = 4;
    const auto c = fit(neighborhood_of(pts, LocalFrame{}, 1.0), config);
    CHECK(c.get(3, 3).real() == doctest::Approx(0.5).epsilon(1e-8));
    for (int k = 0; k <= 4; ++k) {
        for (int n = k & 1; n <= k; n += 2) {
            if (k == 3 && n == 3) continue;
            CHECK(std::abs(c.get(k, n)) < 1e-8);
        }
    }
}

TEST_CASE("fit: exact plane reproduces the gradient") {
    const double a = 0.7, b = -0.3;
    const auto pts = sample_graph(
        [&](double x, double y) { return a * x + b * y; }, 0.5, 150);
    FitConfig config;
    config.radius = 0.5;
    config.max_order = 3;
    const auto c = fit(neighborhood_of(pts, LocalFrame{}, 0.5), config);
    // phi_{1,1} = (a - i b)/2 in physical units
    const auto row1 = c.unnormalized_row(1);
    CHECK(row1[1].real() == doctest::Approx(a / 2.0).epsilon(1e-9));
    CHECK(row1[1].imag() == doctest::Approx(-b / 2.0).epsilon(1e-9));
    for (int k : {0, 2, 3}) {
        for (int n = k & 1; n <= k; n += 2) CHECK(std::abs(c.get(k, n)) < 1e-9);
    }
}

TEST_CASE("fit: generate-and-recover for random low-order surfaces") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 5; ++trial) {
        WavejetCoeffs truth(4);
        for (int k = 0; k <= 4; ++k) {
            const auto row = testutil::random_row(k, rng);
            for (int n = k & 1; n <= k; n += 2) truth.set(k, n, row[n]);
        }
        const auto cloud = synthetic::from_wavejets(truth, {1.0, 2000});
        FitConfig config;
        config.radius = 1.0;
        config.max_order = 4;
        const auto c =
            fit(neighborhood_of(cloud.positions, LocalFrame{}, 1.0), config);
        const double ref = truth.max_magnitude();
        for (int k = 0; k <= 4; ++k) {
            for (int n = k & 1; n <= k; n += 2) {
                CHECK(std::abs(c.get(k, n) - truth.get(k, n)) < 1e-3 * ref);
            }
        }
    }
}

TEST_CASE("fit: weighted residual orthogonal to the basis columns") {
    const auto pts = sample_graph(
        [](double x, double y) { return std::sin(2.0 * x) * std::cos(y); }, 0.5,
        500);
    FitConfig config;
    config.radius = 0.5;
    config.max_order = 4;
    const auto neigh = neighborhood_of(pts, LocalFrame{}, 0.5);
    const auto c = fit(neigh, config);

    // rebuild columns independently: r^k, 2 r^k cos, -2 r^k sin
    for (int k = 0; k <= 4; ++k) {
        for (int n = k & 1; n <= k; n += 2) {
            double dot_re = 0.0, dot_im = 0.0, col_norm = 0.0, res_norm = 0.0;
            for (size_t i = 0; i < neigh.polar.size(); ++i) {
                const auto& p = neigh.polar[i];
                const double rk = std::pow(p.x() / neigh.radius, k);
                const double res =
                    p.z() - c.evaluate(p.x() / neigh.radius, p.y());
                const double w = neigh.weights[i];
                const double bc =
                    n == 0 ? rk : 2.0 * rk * std::cos(n * p.y());
                dot_re += w * res * bc;
                col_norm += w * bc * bc;
                res_norm += w * res * res;
                if (n > 0) {
                    const double bs = -2.0 * rk * std::sin(n * p.y());
                    dot_im += w * res * bs;
                }
            }
            const double scale =
                std::sqrt(col_norm) * std::max(1e-12, std::sqrt(res_norm)) + 1e-12;
            CHECK(std::abs(dot_re) / scale < 1e-6);
            CHECK(std::abs(dot_im) / scale < 1e-6);
        }
    }
}

TEST_CASE("fit: IRLS objective is non-increasing over iterations") {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto pts = sample_graph(
        [](double x, double y) { return x * x - y * y + 0.3 * x * y; }, 0.5,
        300);
    for (auto& p : pts) {
        if (unit(rng) > 0.8) p.z() += 2.0 * unit(rng); // heavy outliers
    }
    const auto neigh = neighborhood_of(pts, LocalFrame{}, 0.5);

    double prev = std::numeric_limits<double>::infinity();
    for (int iters = 0; iters <= 8; ++iters) {
        FitConfig config;
        config.radius = 0.5;
        config.max_order = 3;
        config.norm = FitNorm::L1;
        config.irls_iters = iters;
        const double obj = l1_objective(neigh, fit(neigh, config));
        CHECK(obj <= prev + 1e-12);
        prev = obj;
    }
}

TEST_CASE("fit: L1 beats L2 by 5x under gross outliers (median of 50)") {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> ratios;
    for (int trial = 0; trial < 50; ++trial) {
        WavejetCoeffs truth(3);
        for (int k = 0; k <= 3; ++k) {
            const auto row = testutil::random_row(k, rng);
            for (int n = k & 1; n <= k; n += 2) truth.set(k, n, row[n]);
        }
        auto cloud = synthetic::from_wavejets(truth, {1.0, 400});
        for (size_t i = 0; i < cloud.positions.size(); ++i) {
            if (i % 10 == 0) cloud.positions[i].z() += 20.0 * unit(rng);
        }
        const auto neigh =
            neighborhood_of(cloud.positions, LocalFrame{}, 1.0);

        auto coeff_error = [&](const WavejetCoeffs& c) {
            double e = 0.0;
            for (int k = 0; k <= 3; ++k) {
                for (int n = k & 1; n <= k; n += 2) {
                    e = std::max(e, std::abs(c.get(k, n) - truth.get(k, n)));
                }
            }
            return e;
        };
        FitConfig config;
        config.radius = 1.0;
        config.max_order = 3;
        const double e2 = coeff_error(fit(neigh, config));
        config.norm = FitNorm::L1;
        const double e1 = coeff_error(fit(neigh, config));
        ratios.push_back(e2 / std::max(e1, 1e-300));
    }
    std::sort(ratios.begin(), ratios.end());
    CHECK(ratios[ratios.size() / 2] > 5.0);
}

TEST_CASE("fit: halving the radius shrinks order-2 error") {
    // f = exp(x) cos(y): T_2 = diag(1, -1) at the origin
    const auto f = [](double x, double y) { return std::exp(x) * std::cos(y); };
    auto order2_error = [&](double radius) {
        const auto pts = sample_graph(f, radius, 3000);
        FitConfig config;
        config.radius = radius;
        config.max_order = 4;
        const auto c = fit(neighborhood_of(pts, LocalFrame{}, radius), config);
        const auto row = c.unnormalized_row(2);
        // truth: phi_20 = (f_xx + f_yy)/4 = 0, phi_22 = (f_xx - f_yy)/8 = 1/4
        return std::abs(row[0].real()) + std::abs(row[2] - std::complex<double>(0.25, 0.0));
    };
    const double coarse = order2_error(0.4);
    const double fine = order2_error(0.2);
    CHECK(fine * 2.0 <= coarse);
}

TEST_CASE("fit: error paths") {
    const auto pts = sample_graph([](double, double) { return 0.0; }, 0.5, 20);
    FitConfig config;
    config.radius = 0.5;
    config.max_order = 10; // needs 132 points by default
    CHECK_THROWS_AS(fit(neighborhood_of(pts, LocalFrame{}, 0.5), config),
                    InsufficientNeighborsError);

    // degenerate geometry: all points on one line through the origin
    std::vector<Eigen::Vector3d> line;
    for (int i = 0; i < 100; ++i) line.emplace_back(0.005 * i, 0.0, 0.0);
    FitConfig c2;
    c2.radius = 0.5;
    c2.max_order = 2;
    c2.min_neighbors = 10;
    CHECK_THROWS_AS(fit(neighborhood_of(line, LocalFrame{}, 0.5), c2),
                    IllConditionedError);
}

TEST_CASE("frame equivariance on a noiseless analytic surface") {
    const auto pts = sample_graph(
        [](double x, double y) {
            return 0.5 * x * x - 0.2 * y * y + x * x * x - 3.0 * x * y * y;
        },
        0.6, 1500);
    FitConfig config;
    config.radius = 0.6;
    config.max_order = 4;

    const auto base = fit(neighborhood_of(pts, LocalFrame{}, 0.6), config);

    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> uang(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 5; ++trial) {
        const double alpha = uang(rng);
        LocalFrame rot;
        rot.e1 = Eigen::Vector3d(std::cos(alpha), std::sin(alpha), 0.0);
        rot.e2 = Eigen::Vector3d(-std::sin(alpha), std::cos(alpha), 0.0);
        const auto turned = fit(neighborhood_of(pts, rot, 0.6), config);

        for (int k = 0; k <= 4; ++k) {
            for (int n = k & 1; n <= k; n += 2) {
                // a point at angle theta in the base frame sits at theta -
                // alpha in the rotated frame, so phi picks up e^{+i n alpha}
                const auto expect =
                    base.get(k, n) *
                    std::exp(std::complex<double>(0.0, n * alpha));
                CHECK(std::abs(turned.get(k, n) - expect) < 1e-8);
            }
        }

        // exported 3-D vectors are frame independent
        const auto d0 = principal_directions(base, 3, LocalFrame{});
        const auto d1 = principal_directions(turned, 3, rot);
        REQUIRE(d0.size() == d1.size());
        for (const auto& a : d0) {
            double best = 10.0;
            for (const auto& b : d1) {
                if (a.kind != b.kind) continue;
                best = std::min(best, (a.direction3d - b.direction3d).norm());
            }
            CHECK(best < 1e-6);
        }
    }
}

TEST_CASE("estimate_at: sphere is order-2 umbilical within noise") {
    // upper hemisphere around the north pole of a unit sphere
    PointCloud cloud;
    const double golden = 2.399963229728653;
    for (int i = 0; i < 4000; ++i) {
        const double r = 0.45 * std::sqrt((i + 0.5) / 4000.0);
        const double t = i * golden;
        const double x = r * std::cos(t), y = r * std::sin(t);
        cloud.positions.emplace_back(x, y, std::sqrt(1.0 - x * x - y * y));
    }
    cloud.positions.emplace_back(0.0, 0.0, 1.0);
    const int query = static_cast<int>(cloud.positions.size()) - 1;

    const SpatialIndex index(cloud);
    FitConfig config;
    config.radius = 0.3;
    config.max_order = 4;
    const auto [frame, coeffs] = estimate_at(cloud, index, query, config);

    // g_2 is constant: every reported order-2 eigenvalue equals the
    // curvature magnitude 1/R regardless of angle
    const auto dirs = principal_directions(coeffs, 2, frame);
    for (const auto& d : dirs) {
        CHECK(std::abs(d.eigenvalue) == doctest::Approx(1.0).epsilon(0.02));
    }
    if (dirs.size() >= 2) {
        double lo = dirs[0].eigenvalue, hi = dirs[0].eigenvalue;
        for (const auto& d : dirs) {
            lo = std::min(lo, d.eigenvalue);
            hi = std::max(hi, d.eigenvalue);
        }
        CHECK(hi - lo < 0.02);
    }
}

TEST_CASE("estimate_at: cube edge point has order-2 maximum along the edge") {
    const auto cube = synthetic::cube(30000, 1.0);
    const SpatialIndex index(cube.cloud);
    FitConfig config;
    config.radius = 0.1;
    config.max_order = 4;

    int checked = 0;
    for (size_t i = 0; i < cube.tags.size() && checked < 5; ++i) {
        if (cube.tags[i] != synthetic::CubeTag::Edge) continue;
        ++checked;
        const auto [frame, coeffs] =
            estimate_at(cube.cloud, index, static_cast<int>(i), config);
        const auto dirs = principal_directions(coeffs, 2, frame);
        double best = kPi;
        for (const auto& d : dirs) {
            if (d.kind != ExtremumKind::Maximum) continue;
            const double c = std::abs(d.direction3d.dot(cube.edge_dirs[i]));
            best = std::min(best, std::acos(std::clamp(c, 0.0, 1.0)));
        }
        CHECK(best < 1.0 * kPi / 180.0);
    }
    CHECK(checked == 5);
}

TEST_CASE("estimate_at: isolated point errors out") {
    PointCloud cloud;
    cloud.positions.emplace_back(0.0, 0.0, 0.0);
    cloud.positions.emplace_back(10.0, 0.0, 0.0);
    const SpatialIndex index(cloud);
    FitConfig config;
    config.radius = 0.5;
    CHECK_THROWS_AS(estimate_at(cloud, index, 0, config),
                    InsufficientNeighborsError);
}

} // TEST_SUITE
