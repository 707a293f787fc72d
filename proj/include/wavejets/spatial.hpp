#pragma once

#include <vector>

#include <Eigen/Core>

namespace wavejets {

struct PointCloud {
    std::vector<Eigen::Vector3d> positions;
    std::vector<Eigen::Vector3d> normals; // empty, or one unit normal per point

    bool has_normals() const { return !normals.empty(); }
    size_t size() const { return positions.size(); }

    /// Diagonal of the axis-aligned bounding box.
    double bounding_diagonal() const;
};

/// Static median-split kd-tree over cloud positions. Radius queries are
/// exact closed-ball membership; build is deterministic for a fixed input
/// ordering.
class SpatialIndex {
public:
    explicit SpatialIndex(const PointCloud& cloud);

    /// All indices i with |p_i - center| <= radius, unordered.
    std::vector<int> radius_query(const Eigen::Vector3d& center,
                                  double radius) const;

private:
    struct Node {
        int left = -1, right = -1; // children, -1 for leaf
        int begin = 0, end = 0;    // leaf range into indices_
        int axis = 0;
        double split = 0.0;
    };

    int build(int begin, int end, const std::vector<Eigen::Vector3d>& pts);

    static constexpr int kLeafSize = 16;
    std::vector<Node> nodes_;
    std::vector<int> indices_;
    std::vector<Eigen::Vector3d> points_;
};

} // namespace wavejets
