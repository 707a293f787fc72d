#include "wavejets/regression.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace wavejets {

namespace {

Eigen::Matrix3d weighted_covariance(std::span<const Eigen::Vector3d> pts,
                                    std::span<const double> weights,
                                    Eigen::Vector3d* mean_out) {
    double wsum = 0.0;
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (size_t i = 0; i < pts.size(); ++i) {
        mean += weights[i] * pts[i];
        wsum += weights[i];
    }
    mean /= wsum;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (size_t i = 0; i < pts.size(); ++i) {
        const Eigen::Vector3d d = pts[i] - mean;
        cov += weights[i] * d * d.transpose();
    }
    cov /= wsum;
    if (mean_out) *mean_out = mean;
    return cov;
}

/// Design matrix of the real Wavejets basis at normalized radius r_hat:
/// per order k the columns are r^k (n = 0) and the 2 r^k cos / -2 r^k sin
/// pair for each n >= 1 with the parity of k. Column order matches
/// pack/unpack below.
void fill_design_row(Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> out,
                     int max_order, double r_hat, double theta) {
    int col = 0;
    double rk = 1.0;
    for (int k = 0; k <= max_order; ++k) {
        for (int n = k & 1; n <= k; n += 2) {
            if (n == 0) {
                out(col++) = rk;
            } else {
                out(col++) = 2.0 * rk * std::cos(n * theta);
                out(col++) = -2.0 * rk * std::sin(n * theta);
            }
        }
        rk *= r_hat;
    }
}

WavejetCoeffs unpack_solution(const Eigen::VectorXd& x, int max_order,
                              double scale) {
    WavejetCoeffs c(max_order, scale);
    int col = 0;
    for (int k = 0; k <= max_order; ++k) {
        for (int n = k & 1; n <= k; n += 2) {
            if (n == 0) {
                c.set(k, 0, {x(col++), 0.0});
            } else {
                const double re = x(col++);
                const double im = x(col++);
                c.set(k, n, {re, im});
            }
        }
    }
    return c;
}

Eigen::VectorXd solve_weighted(const Eigen::MatrixXd& design,
                               const Eigen::VectorXd& rhs,
                               const Eigen::VectorXd& weights) {
    const Eigen::VectorXd sw = weights.array().sqrt();
    const Eigen::MatrixXd a = sw.asDiagonal() * design;
    const Eigen::VectorXd b = sw.asDiagonal() * rhs;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < design.cols()) {
        const auto& r = qr.matrixR();
        const double dmax = std::abs(r(0, 0));
        const int last = static_cast<int>(design.cols()) - 1;
        const double dmin = std::abs(r(last, last));
        throw IllConditionedError("fit: rank-deficient design matrix",
                                  dmin > 0.0 ? dmax / dmin
                                             : std::numeric_limits<double>::infinity());
    }
    return qr.solve(b);
}

} // namespace

LocalFrame build_frame(const Eigen::Vector3d& query,
                       std::span<const Eigen::Vector3d> neighbors, double radius,
                       std::optional<Eigen::Vector3d> orientation_hint) {
    if (neighbors.size() < 3) {
        throw FrameUndefinedError("build_frame: need at least 3 neighbors");
    }
    const double sigma = radius / 3.0;
    std::vector<double> weights(neighbors.size());
    for (size_t i = 0; i < neighbors.size(); ++i) {
        weights[i] =
            std::exp(-(query - neighbors[i]).squaredNorm() / (2.0 * sigma * sigma));
    }

    Eigen::Vector3d mean;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(
        weighted_covariance(neighbors, weights, &mean));
    Eigen::Vector3d normal = eig.eigenvectors().col(0);

    // one Welsch reweighting pass on plane distance, skipped when the points
    // are already exactly planar
    const double plane_var = eig.eigenvalues()(0);
    if (plane_var > 1e-24 * std::max(1.0, eig.eigenvalues()(2))) {
        const double h = 3.0 * std::sqrt(plane_var);
        for (size_t i = 0; i < neighbors.size(); ++i) {
            const double d = (neighbors[i] - mean).dot(normal);
            weights[i] *= std::exp(-(d * d) / (h * h));
        }
        eig.compute(weighted_covariance(neighbors, weights, nullptr));
        normal = eig.eigenvectors().col(0);
    }

    const auto& evals = eig.eigenvalues();
    if (evals(1) <= 1e-12 * std::max(evals(2), 1e-300)) {
        throw FrameUndefinedError("build_frame: degenerate (collinear) neighborhood");
    }

    if (orientation_hint && normal.dot(*orientation_hint) < 0.0) normal = -normal;

    // deterministic tangent: project the global axis least aligned with normal
    int axis = 0;
    normal.cwiseAbs().minCoeff(&axis);
    Eigen::Vector3d e1 = Eigen::Vector3d::Unit(axis);
    e1 = (e1 - e1.dot(normal) * normal).normalized();

    LocalFrame frame;
    frame.origin = query;
    frame.normal = normal;
    frame.e1 = e1;
    frame.e2 = normal.cross(e1);
    return frame;
}

Neighborhood polar_coords(const LocalFrame& frame,
                          std::span<const Eigen::Vector3d> points,
                          std::span<const int> indices, double radius) {
    const double sigma = radius / 3.0;
    Neighborhood neigh;
    neigh.radius = radius;
    neigh.indices.assign(indices.begin(), indices.end());
    neigh.polar.reserve(points.size());
    neigh.weights.reserve(points.size());
    for (const auto& p : points) {
        const Eigen::Vector3d d = p - frame.origin;
        const double u = d.dot(frame.e1);
        const double v = d.dot(frame.e2);
        const double r = std::hypot(u, v);
        double theta = std::atan2(v, u);
        if (theta < 0.0) theta += 2.0 * std::numbers::pi;
        neigh.polar.emplace_back(r, theta, d.dot(frame.normal));
        neigh.weights.push_back(
            std::exp(-d.squaredNorm() / (2.0 * sigma * sigma)));
    }
    return neigh;
}

WavejetCoeffs fit(const Neighborhood& neigh, const FitConfig& config) {
    const int n = static_cast<int>(neigh.polar.size());
    const int dof = FitConfig::dof(config.max_order);
    const int required = std::max(dof, config.effective_min_neighbors());
    if (n < required) {
        throw InsufficientNeighborsError(
            "fit: " + std::to_string(n) + " neighbors, need " +
            std::to_string(required));
    }

    Eigen::MatrixXd design(n, dof);
    Eigen::VectorXd rhs(n);
    Eigen::VectorXd weights(n);
    for (int i = 0; i < n; ++i) {
        const auto& p = neigh.polar[i];
        fill_design_row(design.row(i), config.max_order, p.x() / neigh.radius,
                        p.y());
        rhs(i) = p.z();
        weights(i) = neigh.weights[i];
    }

    Eigen::VectorXd x = solve_weighted(design, rhs, weights);

    if (config.norm == FitNorm::L1) {
        const double eps = config.effective_irls_eps();
        for (int iter = 0; iter < config.irls_iters; ++iter) {
            const Eigen::VectorXd res = rhs - design * x;
            Eigen::VectorXd irls_w(n);
            for (int i = 0; i < n; ++i) {
                irls_w(i) = weights(i) / std::max(std::abs(res(i)), eps);
            }
            const Eigen::VectorXd next = solve_weighted(design, rhs, irls_w);
            const double change = (next - x).cwiseAbs().maxCoeff();
            x = next;
            if (change < 1e-10) break;
        }
    }

    return unpack_solution(x, config.max_order, neigh.radius);
}

std::pair<LocalFrame, WavejetCoeffs> estimate_at(const PointCloud& cloud,
                                                 const SpatialIndex& index,
                                                 int query_index,
                                                 const FitConfig& config) {
    if (query_index < 0 || static_cast<size_t>(query_index) >= cloud.size()) {
        throw std::invalid_argument("estimate_at: query index out of range");
    }
    if (!(config.radius > 0.0)) {
        throw std::invalid_argument("estimate_at: radius must be > 0");
    }
    const Eigen::Vector3d query = cloud.positions[query_index];
    const auto ids = index.radius_query(query, config.radius);
    if (static_cast<int>(ids.size()) < config.effective_min_neighbors()) {
        throw InsufficientNeighborsError(
            "estimate_at: " + std::to_string(ids.size()) +
            " neighbors inside the radius, need " +
            std::to_string(config.effective_min_neighbors()));
    }

    std::vector<Eigen::Vector3d> pts;
    pts.reserve(ids.size());
    for (int i : ids) pts.push_back(cloud.positions[i]);

    std::optional<Eigen::Vector3d> hint;
    if (cloud.has_normals()) hint = cloud.normals[query_index];

    const LocalFrame frame = build_frame(query, pts, config.radius, hint);
    const Neighborhood neigh = polar_coords(frame, pts, ids, config.radius);
    return {frame, fit(neigh, config)};
}

WavejetCoeffs estimate_with_frame(const PointCloud& cloud,
                                  const SpatialIndex& index,
                                  const LocalFrame& frame,
                                  const FitConfig& config) {
    const auto ids = index.radius_query(frame.origin, config.radius);
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(ids.size());
    for (int i : ids) pts.push_back(cloud.positions[i]);
    const Neighborhood neigh = polar_coords(frame, pts, ids, config.radius);
    return fit(neigh, config);
}

} // namespace wavejets
