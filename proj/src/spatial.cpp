#include "wavejets/spatial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wavejets {

double PointCloud::bounding_diagonal() const {
    if (positions.empty()) return 0.0;
    Eigen::Vector3d lo = positions.front(), hi = positions.front();
    for (const auto& p : positions) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return (hi - lo).norm();
}

SpatialIndex::SpatialIndex(const PointCloud& cloud) : points_(cloud.positions) {
    if (points_.empty()) {
        throw std::invalid_argument("SpatialIndex: empty point cloud");
    }
    indices_.resize(points_.size());
    std::iota(indices_.begin(), indices_.end(), 0);
    nodes_.reserve(2 * points_.size() / kLeafSize + 1);
    build(0, static_cast<int>(points_.size()), points_);
}

int SpatialIndex::build(int begin, int end,
                        const std::vector<Eigen::Vector3d>& pts) {
    const int node_id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    if (end - begin <= kLeafSize) {
        nodes_[node_id].begin = begin;
        nodes_[node_id].end = end;
        return node_id;
    }

    // split on the widest axis at the median
    Eigen::Vector3d lo = pts[indices_[begin]], hi = lo;
    for (int i = begin; i < end; ++i) {
        lo = lo.cwiseMin(pts[indices_[i]]);
        hi = hi.cwiseMax(pts[indices_[i]]);
    }
    int axis = 0;
    (hi - lo).maxCoeff(&axis);

    const int mid = (begin + end) / 2;
    std::nth_element(indices_.begin() + begin, indices_.begin() + mid,
                     indices_.begin() + end, [&](int a, int b) {
                         if (pts[a][axis] != pts[b][axis])
                             return pts[a][axis] < pts[b][axis];
                         return a < b; // deterministic tie-break
                     });

    nodes_[node_id].axis = axis;
    nodes_[node_id].split = pts[indices_[mid]][axis];
    const int left = build(begin, mid, pts);
    const int right = build(mid, end, pts);
    nodes_[node_id].left = left;
    nodes_[node_id].right = right;
    return node_id;
}

std::vector<int> SpatialIndex::radius_query(const Eigen::Vector3d& center,
                                            double radius) const {
    std::vector<int> out;
    const double r2 = radius * radius;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const Node& node = nodes_[stack.back()];
        stack.pop_back();
        if (node.left < 0) {
            for (int i = node.begin; i < node.end; ++i) {
                const int idx = indices_[i];
                if ((points_[idx] - center).squaredNorm() <= r2) {
                    out.push_back(idx);
                }
            }
            continue;
        }
        const double d = center[node.axis] - node.split;
        if (d <= radius) stack.push_back(node.left);
        if (d >= -radius) stack.push_back(node.right);
    }
    return out;
}

} // namespace wavejets
