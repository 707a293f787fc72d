// Command-line frontend: per-point direction computation on point clouds,
// synthetic surface generation, and a built-in invariant self-test.

#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavejets/directions.hpp"
#include "wavejets/io.hpp"
#include "wavejets/pipeline.hpp"
#include "wavejets/synthetic.hpp"

namespace {

using namespace wavejets;

std::vector<int> parse_orders(const std::string& spec) {
    std::vector<int> orders;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) orders.push_back(std::stoi(item));
    }
    return orders;
}

int run_dirs(const std::string& input, double radius, int max_order,
             const std::string& orders_spec, const std::string& norm,
             int subsample, uint64_t seed, int threads,
             const std::string& output, const std::string& ply_out,
             double scale, bool max_only) {
    const PointCloud cloud = io::read_cloud(input);

    PipelineConfig config;
    config.fit.radius = radius;
    config.fit.max_order = max_order;
    config.fit.norm = norm == "l1" ? FitNorm::L1 : FitNorm::L2;
    config.orders = parse_orders(orders_spec);
    config.subsample = subsample;
    config.seed = seed;
    config.threads = threads;
    config.max_only = max_only;

    const PipelineResult result = compute_directions(cloud, config);
    std::cerr << "evaluated " << result.evaluated << " points, skipped "
              << result.skipped << ", " << result.records.size()
              << " directions\n";

    if (!output.empty()) io::write_directions(output, result.records);
    if (!ply_out.empty()) {
        io::write_direction_segments_ply(ply_out, result.records, scale);
    }
    return 0;
}

int run_synth(const std::string& generator, int n, double edge_len, double t,
              int n_planes, const std::string& angles_spec, double noise_pct,
              uint64_t seed, const std::string& output, bool binary) {
    PointCloud cloud;
    if (generator == "monkey") {
        cloud = synthetic::monkey_saddle(n).cloud;
    } else if (generator == "octopus") {
        cloud = synthetic::octopus_saddle(n).cloud;
    } else if (generator == "cube") {
        cloud = synthetic::cube(n, edge_len).cloud;
    } else if (generator == "planes") {
        std::vector<double> angles;
        std::stringstream ss(angles_spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) angles.push_back(std::stod(item));
        }
        cloud = synthetic::intersecting_planes(n_planes, angles, n);
    } else if (generator == "tjunction") {
        cloud = synthetic::ridge_to_tjunction(t, n);
    } else {
        std::cerr << "unknown generator: " << generator << "\n";
        return 2;
    }
    if (noise_pct > 0.0) cloud = synthetic::add_noise(cloud, noise_pct, seed);

    if (output.size() > 4 && output.substr(output.size() - 4) == ".ply") {
        io::write_ply(output, cloud, binary);
    } else {
        io::write_xyz(output, cloud);
    }
    std::cerr << "wrote " << cloud.size() << " points to " << output << "\n";
    return 0;
}

bool check(bool ok, const std::string& what, int& failures) {
    std::cout << (ok ? "[pass] " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
    return ok;
}

int run_selftest() {
    int failures = 0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    // tensor <-> row round trip
    {
        bool ok = true;
        for (int k = 1; k <= 10 && ok; ++k) {
            std::vector<double> partials(k + 1);
            for (auto& p : partials) p = unit(rng);
            const auto t = SymTensor2::from_derivatives(partials, k);
            const auto back = wavejet_row_to_tensor(tensor_to_wavejet_row(t), k);
            for (int j = 0; j <= k; ++j) {
                if (std::abs(back[j] - t[j]) > 1e-10) ok = false;
            }
        }
        check(ok, "tensor/wavejet round trip", failures);
    }

    // parity of g_k under a half turn
    {
        bool ok = true;
        for (int k = 2; k <= 8; ++k) {
            WavejetRow row(k + 1, {0.0, 0.0});
            for (int m = k & 1; m <= k; m += 2) {
                row[m] = {unit(rng), m == 0 ? 0.0 : unit(rng)};
            }
            for (double theta : {0.3, 1.7, 4.0}) {
                const double a = row_g(row, theta);
                const double b = row_g(row, theta + 3.14159265358979323846);
                const double expect = (k % 2 == 0) ? a : -a;
                if (std::abs(b - expect) > 1e-9) ok = false;
            }
        }
        check(ok, "g_k parity under theta -> theta + pi", failures);
    }

    // monkey saddle: order-3 maxima at multiples of 2pi/3
    {
        const auto saddle = synthetic::monkey_saddle(5000);
        const SpatialIndex index(saddle.cloud);
        FitConfig fc;
        fc.radius = 0.5;
        fc.max_order = 6;
        const auto [frame, coeffs] =
            estimate_at(saddle.cloud, index, saddle.center_index, fc);
        const auto dirs = principal_directions(coeffs, 3, frame);
        int maxima = 0;
        for (const auto& d : dirs) {
            if (d.kind == ExtremumKind::Maximum) ++maxima;
        }
        check(dirs.size() == 6 && maxima == 3,
              "monkey saddle center has 3 order-3 maxima", failures);
    }

    // kd-tree vs brute force
    {
        PointCloud cloud;
        for (int i = 0; i < 2000; ++i) {
            cloud.positions.emplace_back(unit(rng), unit(rng), unit(rng));
        }
        const SpatialIndex index(cloud);
        bool ok = true;
        for (int trial = 0; trial < 50; ++trial) {
            const Eigen::Vector3d c(unit(rng), unit(rng), unit(rng));
            const double r = 0.1 + 0.3 * std::abs(unit(rng));
            auto got = index.radius_query(c, r);
            std::sort(got.begin(), got.end());
            std::vector<int> want;
            for (int i = 0; i < 2000; ++i) {
                if ((cloud.positions[i] - c).norm() <= r) want.push_back(i);
            }
            if (got != want) ok = false;
        }
        check(ok, "kd-tree radius query vs brute force", failures);
    }

    std::cout << (failures == 0 ? "selftest OK\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arbitrary-order principal directions on point clouds"};
    app.set_config("--config", "", "key=value config file mirroring the flags");
    app.require_subcommand(1);

    // dirs
    std::string input, output, ply_out, orders_spec = "2,3", norm = "l2";
    double radius = 0.0, scale = 1.0;
    int max_order = 10, subsample = -1, threads = 1;
    uint64_t seed = 0;
    bool max_only = false;

    auto* dirs = app.add_subcommand("dirs", "compute principal directions");
    dirs->add_option("--input", input, "input cloud (.xyz or .ply)")->required();
    dirs->add_option("--radius", radius, "neighborhood radius")->required();
    dirs->add_option("--max-order", max_order, "expansion order K");
    dirs->add_option("--orders", orders_spec, "comma-separated orders to extract");
    dirs->add_option("--norm", norm, "l1 or l2")
        ->check(CLI::IsMember({"l1", "l2"}));
    dirs->add_option("--subsample", subsample, "evaluate at N random points");
    dirs->add_option("--seed", seed, "subsample seed");
    dirs->add_option("--threads", threads, "worker threads");
    dirs->add_option("--output", output, "tabular output path");
    dirs->add_option("--ply-out", ply_out, "segment PLY output path");
    dirs->add_option("--scale", scale, "segment length scale");
    dirs->add_flag("--max-only", max_only, "emit only maximum directions");

    // synth
    std::string generator, synth_output = "out.xyz", angles_spec;
    int n = 10000, n_planes = 5;
    double edge_len = 1.0, t_morph = 1.0, noise_pct = 0.0;
    uint64_t synth_seed = 0;
    bool binary = false;

    auto* synth = app.add_subcommand("synth", "generate a synthetic cloud");
    synth
        ->add_option("generator", generator,
                     "monkey | octopus | cube | planes | tjunction")
        ->required();
    synth->add_option("--n", n, "approximate point count");
    synth->add_option("--edge-len", edge_len, "cube edge length");
    synth->add_option("--t", t_morph, "ridge/T-junction morph parameter");
    synth->add_option("--planes", n_planes, "number of intersecting planes");
    synth->add_option("--angles", angles_spec, "comma-separated plane azimuths");
    synth->add_option("--noise-pct", noise_pct,
                      "Gaussian noise std, percent of bounding diagonal");
    synth->add_option("--seed", synth_seed, "noise seed");
    synth->add_option("--output", synth_output, "output path (.xyz or .ply)");
    synth->add_flag("--binary", binary, "binary PLY output");

    auto* selftest =
        app.add_subcommand("selftest", "run the built-in invariant checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dirs->parsed()) {
            if (!(radius > 0.0)) {
                std::cerr << "error: --radius must be > 0\n";
                return 2;
            }
            return run_dirs(input, radius, max_order, orders_spec, norm,
                            subsample, seed, threads, output, ply_out, scale,
                            max_only);
        }
        if (synth->parsed()) {
            return run_synth(generator, n, edge_len, t_morph, n_planes,
                             angles_spec, noise_pct, synth_seed, synth_output,
                             binary);
        }
        if (selftest->parsed()) return run_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
