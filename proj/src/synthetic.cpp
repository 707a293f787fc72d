#include "wavejets/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace wavejets::synthetic {

namespace {

constexpr double kGoldenAngle = 2.399963229728653; // pi (3 - sqrt 5)

} // namespace

PointCloud from_wavejets(const WavejetCoeffs& coeffs, const DiskGrid& grid) {
    PointCloud cloud;
    cloud.positions.reserve(grid.count);
    for (int i = 0; i < grid.count; ++i) {
        const double r = grid.radius * std::sqrt((i + 0.5) / grid.count);
        const double theta = i * kGoldenAngle;
        const double z = coeffs.evaluate(r / coeffs.scale(), theta);
        cloud.positions.emplace_back(r * std::cos(theta), r * std::sin(theta), z);
    }
    return cloud;
}

SaddleCloud monkey_saddle(int n) {
    WavejetCoeffs c(3);
    c.set(3, 3, {0.5, 0.0}); // z = r^3 cos 3t
    SaddleCloud out;
    out.cloud = from_wavejets(c, {1.0, n - 1});
    out.cloud.positions.insert(out.cloud.positions.begin(),
                               Eigen::Vector3d::Zero());
    out.order = 3;
    out.max_angles = {0.0, 2.0 * std::numbers::pi / 3.0,
                      4.0 * std::numbers::pi / 3.0};
    out.center_index = 0;
    return out;
}

SaddleCloud octopus_saddle(int n) {
    WavejetCoeffs c(8);
    c.set(8, 8, {0.5, 0.0}); // z = r^8 cos 8t
    SaddleCloud out;
    out.cloud = from_wavejets(c, {1.0, n - 1});
    out.cloud.positions.insert(out.cloud.positions.begin(),
                               Eigen::Vector3d::Zero());
    out.order = 8;
    for (int m = 0; m < 8; ++m) {
        out.max_angles.push_back(m * std::numbers::pi / 4.0);
    }
    out.center_index = 0;
    return out;
}

CubeCloud cube(int n, double edge_len) {
    if (n < 100) throw std::invalid_argument("cube: need at least 100 points");
    CubeCloud out;
    out.edge_len = edge_len;
    const double h = edge_len / 2.0;

    // ~94% of the budget on faces, the rest on edges + the 8 corners
    const int per_face = static_cast<int>(n * 0.94) / 6;
    const int grid = std::max(2, static_cast<int>(std::sqrt(double(per_face))));
    const double step = edge_len / grid;
    const int per_edge = std::max(2, (n - 6 * grid * grid - 8) / 12);

    auto push = [&](const Eigen::Vector3d& p, CubeTag tag,
                    const Eigen::Vector3d& edge_dir,
                    const Eigen::Vector3d& normal) {
        out.cloud.positions.push_back(p);
        out.cloud.normals.push_back(normal);
        out.tags.push_back(tag);
        out.edge_dirs.push_back(edge_dir);
    };

    // faces: cell-centered grid, never touching the boundary
    for (int axis = 0; axis < 3; ++axis) {
        for (double sign : {-1.0, 1.0}) {
            for (int i = 0; i < grid; ++i) {
                for (int j = 0; j < grid; ++j) {
                    const double u = -h + (i + 0.5) * step;
                    const double v = -h + (j + 0.5) * step;
                    Eigen::Vector3d p;
                    p[axis] = sign * h;
                    p[(axis + 1) % 3] = u;
                    p[(axis + 2) % 3] = v;
                    Eigen::Vector3d normal = Eigen::Vector3d::Zero();
                    normal[axis] = sign;
                    push(p, CubeTag::Face, Eigen::Vector3d::Zero(), normal);
                }
            }
        }
    }

    // edges: samples exactly on the creases over the full length, so the
    // apex line is covered as uniformly as the faces. Only samples clear of
    // the corners get the Edge tag; the rest belong to the corner zone.
    const double corner_margin = 0.15 * edge_len;
    for (int axis = 0; axis < 3; ++axis) {
        for (double su : {-1.0, 1.0}) {
            for (double sv : {-1.0, 1.0}) {
                Eigen::Vector3d dir = Eigen::Vector3d::Zero();
                dir[axis] = 1.0;
                Eigen::Vector3d normal = Eigen::Vector3d::Zero();
                normal[(axis + 1) % 3] = su;
                normal[(axis + 2) % 3] = sv;
                normal.normalize();
                for (int i = 0; i < per_edge; ++i) {
                    const double t = -h + edge_len * (i + 0.5) / per_edge;
                    const bool mid_edge = t >= -h + corner_margin &&
                                          t <= h - corner_margin;
                    Eigen::Vector3d p;
                    p[axis] = t;
                    p[(axis + 1) % 3] = su * h;
                    p[(axis + 2) % 3] = sv * h;
                    push(p, mid_edge ? CubeTag::Edge : CubeTag::Corner,
                         mid_edge ? dir : Eigen::Vector3d::Zero(), normal);
                }
            }
        }
    }

    for (double sx : {-1.0, 1.0})
        for (double sy : {-1.0, 1.0})
            for (double sz : {-1.0, 1.0})
                push({sx * h, sy * h, sz * h}, CubeTag::Corner,
                     Eigen::Vector3d::Zero(),
                     Eigen::Vector3d(sx, sy, sz).normalized());

    return out;
}

PointCloud intersecting_planes(int n_planes, std::span<const double> angles,
                               int n) {
    if (n_planes < 2) {
        throw std::invalid_argument("intersecting_planes: need >= 2 planes");
    }
    std::vector<double> az(angles.begin(), angles.end());
    if (az.empty()) {
        for (int i = 0; i < n_planes; ++i) {
            az.push_back(2.0 * std::numbers::pi * i / n_planes);
        }
    }
    if (static_cast<int>(az.size()) != n_planes) {
        throw std::invalid_argument("intersecting_planes: angle count mismatch");
    }

    PointCloud cloud;
    const int per_plane = n / n_planes;
    const int gt = std::max(2, static_cast<int>(std::sqrt(per_plane / 2.0)));
    const int gs = std::max(2, per_plane / gt);
    for (double alpha : az) {
        const Eigen::Vector3d u(std::cos(alpha), 0.0, std::sin(alpha));
        for (int i = 0; i < gt; ++i) {
            const double t = (i + 0.5) / gt; // radial, stays off the axis
            for (int j = 0; j < gs; ++j) {
                const double s = -1.0 + 2.0 * (j + 0.5) / gs;
                cloud.positions.push_back(t * u + Eigen::Vector3d(0.0, s, 0.0));
            }
        }
    }
    // the shared axis itself
    const int axis_samples = std::max(8, n / 50);
    for (int j = 0; j < axis_samples; ++j) {
        cloud.positions.emplace_back(0.0, -1.0 + 2.0 * (j + 0.5) / axis_samples,
                                     0.0);
    }
    return cloud;
}

PointCloud ridge_to_tjunction(double t, int n) {
    if (t < 0.0 || t > 1.0) {
        throw std::invalid_argument("ridge_to_tjunction: t must be in [0, 1]");
    }
    const double a = 0.5, w = 0.05;
    const int grid = std::max(2, static_cast<int>(std::sqrt(double(n))));
    PointCloud cloud;
    cloud.positions.reserve(grid * grid);
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const double x = -1.0 + 2.0 * (i + 0.5) / grid;
            const double y = -1.0 + 2.0 * (j + 0.5) / grid;
            const double ramp = 0.5 * (1.0 + std::tanh(y / w));
            const double z = -a * std::sqrt(y * y + w * w) -
                             a * t * ramp * std::sqrt(x * x + w * w);
            cloud.positions.emplace_back(x, y, z);
        }
    }
    return cloud;
}

PointCloud add_noise(const PointCloud& cloud, double sigma_pct, uint64_t seed) {
    PointCloud out = cloud;
    if (sigma_pct == 0.0) return out;
    const double sigma = sigma_pct / 100.0 * cloud.bounding_diagonal();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (auto& p : out.positions) {
        p += Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    }
    return out;
}

} // namespace wavejets::synthetic
