#include "wavejets/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "wavejets/directions.hpp"

namespace wavejets {

PipelineResult compute_directions(const PointCloud& cloud,
                                  const PipelineConfig& config) {
    if (!(config.fit.radius > 0.0)) {
        throw std::invalid_argument("compute_directions: radius must be > 0");
    }
    for (int k : config.orders) {
        if (k < 2 || k > config.fit.max_order) {
            throw std::invalid_argument(
                "compute_directions: orders must be in [2, max_order]");
        }
    }

    std::vector<int> queries(cloud.size());
    std::iota(queries.begin(), queries.end(), 0);
    if (config.subsample >= 0 &&
        config.subsample < static_cast<int>(cloud.size())) {
        std::mt19937_64 rng(config.seed);
        std::shuffle(queries.begin(), queries.end(), rng);
        queries.resize(config.subsample);
    }

    const SpatialIndex index(cloud);
    const int n_threads =
        std::max(1, std::min<int>(config.threads,
                                  static_cast<int>(queries.size())));

    std::vector<std::vector<io::DirectionRecord>> partial(n_threads);
    std::atomic<int> skipped{0};
    std::atomic<size_t> cursor{0};

    auto worker = [&](int tid) {
        while (true) {
            const size_t i = cursor.fetch_add(1);
            if (i >= queries.size()) break;
            const int q = queries[i];
            try {
                const auto [frame, coeffs] =
                    estimate_at(cloud, index, q, config.fit);
                for (int k : config.orders) {
                    for (const auto& d : principal_directions(coeffs, k, frame)) {
                        if (config.max_only && d.kind != ExtremumKind::Maximum) {
                            continue;
                        }
                        partial[tid].push_back(
                            {q, cloud.positions[q], d});
                    }
                }
            } catch (const InsufficientNeighborsError&) {
                ++skipped;
            } catch (const FrameUndefinedError&) {
                ++skipped;
            } catch (const IllConditionedError&) {
                ++skipped;
            }
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    PipelineResult result;
    result.evaluated = static_cast<int>(queries.size());
    result.skipped = skipped.load();
    for (auto& p : partial) {
        result.records.insert(result.records.end(), p.begin(), p.end());
    }
    std::sort(result.records.begin(), result.records.end(),
              [](const auto& a, const auto& b) {
                  if (a.point_index != b.point_index)
                      return a.point_index < b.point_index;
                  if (a.direction.order != b.direction.order)
                      return a.direction.order < b.direction.order;
                  return a.direction.angle < b.direction.angle;
              });
    return result;
}

} // namespace wavejets
