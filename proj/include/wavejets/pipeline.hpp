#pragma once

#include <cstdint>
#include <vector>

#include "wavejets/io.hpp"
#include "wavejets/regression.hpp"

namespace wavejets {

struct PipelineConfig {
    FitConfig fit;
    std::vector<int> orders{2, 3};
    int subsample = -1; // < 0: evaluate at every point
    uint64_t seed = 0;
    int threads = 1;
    bool max_only = false;
};

struct PipelineResult {
    std::vector<io::DirectionRecord> records;
    int evaluated = 0;
    int skipped = 0; // queries with too few neighbors or no frame
};

/// Direction computation over the cloud: per-point fit and extraction,
/// data-parallel over query points. Output rows are sorted
/// (point, order, angle), so the result does not depend on thread count.
PipelineResult compute_directions(const PointCloud& cloud,
                                  const PipelineConfig& config);

} // namespace wavejets
