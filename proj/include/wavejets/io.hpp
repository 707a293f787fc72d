#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wavejets/directions.hpp"
#include "wavejets/spatial.hpp"

namespace wavejets::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads a point cloud from plain xyz ("x y z [nx ny nz]" per line) or PLY
/// (ascii or binary little-endian, float or double x y z [+ nx ny nz]).
/// Format is chosen by file extension (.ply vs anything else).
PointCloud read_cloud(const std::string& path);

/// Writes xyz text with 17 significant digits.
void write_xyz(const std::string& path, const PointCloud& cloud);

/// Writes ascii or binary little-endian PLY.
void write_ply(const std::string& path, const PointCloud& cloud,
               bool binary = false);

/// One computed direction at one cloud point.
struct DirectionRecord {
    int point_index = 0;
    Eigen::Vector3d position{0.0, 0.0, 0.0};
    PrincipalDirection direction;
};

/// Tabular text output, one row per direction:
///   point_index px py pz order kind angle dx dy dz eigenvalue
void write_directions(const std::string& path,
                      const std::vector<DirectionRecord>& records);

/// PLY line-segment output: each direction is a segment of length
/// scale * |eigenvalue|^(1/order), colored by order (2 blue, 3 green,
/// 4 cyan, 5 pink, 6 brown).
void write_direction_segments_ply(const std::string& path,
                                  const std::vector<DirectionRecord>& records,
                                  double scale);

} // namespace wavejets::io
