#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wavejets/local_frame.hpp"
#include "wavejets/spatial.hpp"
#include "wavejets/wavejet_coeffs.hpp"

namespace wavejets {

struct FrameUndefinedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientNeighborsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IllConditionedError : std::runtime_error {
    IllConditionedError(const std::string& msg, double condition)
        : std::runtime_error(msg), condition(condition) {}
    double condition;
};

enum class FitNorm { L2, L1 };

struct FitConfig {
    double radius = 0.0;
    int max_order = 10;
    FitNorm norm = FitNorm::L2;
    int irls_iters = 20;
    double irls_eps = -1.0;  // < 0: use 1e-6 * radius
    int min_neighbors = -1;  // < 0: use 2 * dof(max_order)

    /// Real degrees of freedom of the order-K expansion: (K+1)(K+2)/2.
    static int dof(int max_order) {
        return (max_order + 1) * (max_order + 2) / 2;
    }
    int effective_min_neighbors() const {
        return min_neighbors >= 0 ? min_neighbors : 2 * dof(max_order);
    }
    double effective_irls_eps() const {
        return irls_eps >= 0.0 ? irls_eps : 1e-6 * radius;
    }
};

/// Neighborhood of one query point: member indices, their polar coordinates
/// (r_i, theta_i, z_i) in the local frame, and the Gaussian weights w_i.
struct Neighborhood {
    std::vector<int> indices;
    std::vector<Eigen::Vector3d> polar; // (r, theta, z) per point
    std::vector<double> weights;
    double radius = 0.0;
};

/// Tangent frame by Gaussian-weighted PCA with one distance-reweighting pass.
/// The normal is the smallest-eigenvalue direction, oriented toward
/// orientation_hint when given. Throws FrameUndefinedError when the
/// covariance is degenerate.
LocalFrame build_frame(const Eigen::Vector3d& query,
                       std::span<const Eigen::Vector3d> neighbors, double radius,
                       std::optional<Eigen::Vector3d> orientation_hint = {});

/// Polar coordinates and weights of the given points in the frame:
/// w_i = exp(-|query - p_i|^2 / (2 sigma^2)) with sigma = radius / 3.
Neighborhood polar_coords(const LocalFrame& frame,
                          std::span<const Eigen::Vector3d> points,
                          std::span<const int> indices, double radius);

/// Weighted Wavejets regression of the neighborhood heights. L2 solves the
/// weighted least-squares system directly; L1 runs IRLS warm-started from
/// the L2 solution. Coefficients come back scale-normalized with
/// scale = config.radius.
WavejetCoeffs fit(const Neighborhood& neigh, const FitConfig& config);

/// Full per-point pipeline: radius query, frame, polar coordinates, fit.
std::pair<LocalFrame, WavejetCoeffs> estimate_at(const PointCloud& cloud,
                                                 const SpatialIndex& index,
                                                 int query_index,
                                                 const FitConfig& config);

/// estimate_at with a caller-supplied frame (the frame's origin is used as
/// the query position).
WavejetCoeffs estimate_with_frame(const PointCloud& cloud,
                                  const SpatialIndex& index,
                                  const LocalFrame& frame,
                                  const FitConfig& config);

} // namespace wavejets
