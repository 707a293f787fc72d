#pragma once

#include <Eigen/Core>

namespace wavejets {

/// Per-point orthonormal right-handed basis (e1, e2, normal) defining the
/// parametrization plane for the local regression.
struct LocalFrame {
    Eigen::Vector3d origin{0.0, 0.0, 0.0};
    Eigen::Vector3d normal{0.0, 0.0, 1.0};
    Eigen::Vector3d e1{1.0, 0.0, 0.0};
    Eigen::Vector3d e2{0.0, 1.0, 0.0};
};

} // namespace wavejets
