#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wavejets/spatial.hpp"
#include "wavejets/wavejet_coeffs.hpp"

namespace wavejets::synthetic {

/// Quasi-uniform disk sampling spec (sunflower spiral): count points on a
/// disk of the given radius.
struct DiskGrid {
    double radius = 1.0;
    int count = 10000;
};

/// Height-field samples (r cos t, r sin t, f(r, t)) of the surface described
/// by a coefficient set.
PointCloud from_wavejets(const WavejetCoeffs& coeffs, const DiskGrid& grid);

/// A saddle cloud with its analytic direction structure at the center point
/// (which is always index 0).
struct SaddleCloud {
    PointCloud cloud;
    int order = 0;                  // the one order with directions
    std::vector<double> max_angles; // maxima of g_order at the center
    int center_index = 0;
};

/// z = r^3 cos 3t. Order-3 maxima at {0, 2pi/3, 4pi/3}; other orders vanish.
SaddleCloud monkey_saddle(int n);
/// z = r^8 cos 8t. Order-8 maxima at {m pi/4}; other orders vanish.
SaddleCloud octopus_saddle(int n);

enum class CubeTag { Face, Edge, Corner };

struct CubeCloud {
    PointCloud cloud;
    std::vector<CubeTag> tags;
    /// Unit direction along the edge, zero for non-edge points.
    std::vector<Eigen::Vector3d> edge_dirs;
    double edge_len = 1.0;
};

/// Sharp axis-aligned cube centered at the origin: faces on a grid, explicit
/// samples along the full 12 creases, and the 8 vertices. Crease samples
/// away from the corners are tagged Edge; crease samples inside the corner
/// zone and the vertices themselves are tagged Corner.
CubeCloud cube(int n, double edge_len);

/// Half-planes sharing the y-axis, one per azimuth angle (in the xz-plane).
/// Empty angles: equally spaced. Two planes make a plain ridge.
PointCloud intersecting_planes(int n_planes, std::span<const double> angles,
                               int n);

/// Morph from a ridge (t = 0) to a smooth T-junction (t = 1), sampled on a
/// grid over [-1, 1]^2. Height field:
///   z(x, y) = -a sqrt(y^2 + w^2) - a t ramp(y) sqrt(x^2 + w^2)
/// with ramp(y) = (1 + tanh(y / w)) / 2, a = 0.5, w = 0.05: a smooth valley
/// along the x-axis plus a t-scaled smooth valley along the +y half-axis.
PointCloud ridge_to_tjunction(double t, int n);

/// I.i.d. Gaussian displacement with std sigma_pct/100 of the bounding
/// diagonal, seeded deterministically.
PointCloud add_noise(const PointCloud& cloud, double sigma_pct, uint64_t seed);

} // namespace wavejets::synthetic
