#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavejets/directions.hpp"
#include "wavejets/pipeline.hpp"
#include "wavejets/regression.hpp"
#include "wavejets/spatial.hpp"
#include "wavejets/sym_tensor.hpp"
#include "wavejets/synthetic.hpp"
#include "wavejets/wavejet_coeffs.hpp"

namespace py = pybind11;
using namespace wavejets;

namespace {

PointCloud cloud_from_array(const Eigen::MatrixXd& positions) {
    if (positions.cols() != 3) {
        throw std::invalid_argument("positions must be an (n, 3) array");
    }
    PointCloud cloud;
    cloud.positions.reserve(positions.rows());
    for (Eigen::Index i = 0; i < positions.rows(); ++i) {
        cloud.positions.emplace_back(positions.row(i).transpose());
    }
    return cloud;
}

Eigen::MatrixXd cloud_to_array(const PointCloud& cloud) {
    Eigen::MatrixXd out(cloud.size(), 3);
    for (size_t i = 0; i < cloud.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = cloud.positions[i].transpose();
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_wavejets, m) {
    m.doc() = "Arbitrary-order principal directions on point-set surfaces";

    py::class_<SymTensor2>(m, "SymTensor2")
        .def(py::init([](std::vector<double> partials) {
                 const int order = static_cast<int>(partials.size()) - 1;
                 return SymTensor2::from_derivatives(std::move(partials), order);
             }),
             py::arg("partials"))
        .def_property_readonly("order", &SymTensor2::order)
        .def_property_readonly("coeffs", &SymTensor2::coeffs);

    m.def("contract", &contract, py::arg("tensor"), py::arg("v"));
    m.def("apply_full", &apply_full, py::arg("tensor"), py::arg("v"));
    m.def("tensor_gradient", &tensor_gradient, py::arg("tensor"), py::arg("v"));
    m.def("tensor_to_wavejet_row", &tensor_to_wavejet_row, py::arg("tensor"));
    m.def("wavejet_row_to_tensor", &wavejet_row_to_tensor, py::arg("row"),
          py::arg("order"));

    py::class_<WavejetCoeffs>(m, "WavejetCoeffs")
        .def(py::init<int, double>(), py::arg("max_order"),
             py::arg("scale") = 1.0)
        .def_property_readonly("max_order", &WavejetCoeffs::max_order)
        .def_property_readonly("scale", &WavejetCoeffs::scale)
        .def("get", &WavejetCoeffs::get, py::arg("k"), py::arg("n"))
        .def("set", &WavejetCoeffs::set, py::arg("k"), py::arg("n"),
             py::arg("value"))
        .def("evaluate", &WavejetCoeffs::evaluate, py::arg("r"), py::arg("theta"))
        .def("g", &WavejetCoeffs::g, py::arg("k"), py::arg("theta"))
        .def("g_deriv", &WavejetCoeffs::g_deriv, py::arg("k"), py::arg("theta"))
        .def("g_second", &WavejetCoeffs::g_second, py::arg("k"),
             py::arg("theta"));

    py::class_<LocalFrame>(m, "LocalFrame")
        .def(py::init<>())
        .def_readwrite("origin", &LocalFrame::origin)
        .def_readwrite("normal", &LocalFrame::normal)
        .def_readwrite("e1", &LocalFrame::e1)
        .def_readwrite("e2", &LocalFrame::e2);

    py::enum_<ExtremumKind>(m, "ExtremumKind")
        .value("Maximum", ExtremumKind::Maximum)
        .value("Minimum", ExtremumKind::Minimum);

    py::class_<PrincipalDirection>(m, "PrincipalDirection")
        .def_readonly("order", &PrincipalDirection::order)
        .def_readonly("angle", &PrincipalDirection::angle)
        .def_readonly("direction3d", &PrincipalDirection::direction3d)
        .def_readonly("eigenvalue", &PrincipalDirection::eigenvalue)
        .def_readonly("kind", &PrincipalDirection::kind);

    m.def("find_roots", &find_roots, py::arg("row"),
          py::arg("umbilic_ref") = -1.0);
    m.def("principal_directions", &principal_directions, py::arg("coeffs"),
          py::arg("order"), py::arg("frame"));

    py::class_<RosyFeasibility>(m, "RosyFeasibility")
        .def_readonly("rank", &RosyFeasibility::rank)
        .def_readonly("solution_basis", &RosyFeasibility::solution_basis);
    m.def("rosy_feasibility", &rosy_feasibility, py::arg("angles"));

    m.def(
        "estimate_at",
        [](const Eigen::MatrixXd& positions, int query_index, double radius,
           int max_order, const std::string& norm) {
            const PointCloud cloud = cloud_from_array(positions);
            const SpatialIndex index(cloud);
            FitConfig config;
            config.radius = radius;
            config.max_order = max_order;
            config.norm = norm == "l1" ? FitNorm::L1 : FitNorm::L2;
            return estimate_at(cloud, index, query_index, config);
        },
        py::arg("positions"), py::arg("query_index"), py::arg("radius"),
        py::arg("max_order") = 10, py::arg("norm") = "l2",
        "Local frame and Wavejet coefficients at one cloud point");

    m.def(
        "compute_directions",
        [](const Eigen::MatrixXd& positions, double radius,
           std::vector<int> orders, int max_order, const std::string& norm,
           int subsample, uint64_t seed, int threads) {
            PipelineConfig config;
            config.fit.radius = radius;
            config.fit.max_order = max_order;
            config.fit.norm = norm == "l1" ? FitNorm::L1 : FitNorm::L2;
            config.orders = std::move(orders);
            config.subsample = subsample;
            config.seed = seed;
            config.threads = threads;
            const auto result =
                compute_directions(cloud_from_array(positions), config);
            py::list out;
            for (const auto& r : result.records) {
                out.append(py::make_tuple(r.point_index, r.direction));
            }
            return out;
        },
        py::arg("positions"), py::arg("radius"),
        py::arg("orders") = std::vector<int>{2, 3}, py::arg("max_order") = 10,
        py::arg("norm") = "l2", py::arg("subsample") = -1, py::arg("seed") = 0,
        py::arg("threads") = 1,
        "All principal directions over the cloud as (point_index, direction)");

    auto synth = m.def_submodule("synthetic");
    synth.def("monkey_saddle", [](int n) {
        const auto s = synthetic::monkey_saddle(n);
        return py::make_tuple(cloud_to_array(s.cloud), s.order, s.max_angles);
    });
    synth.def("octopus_saddle", [](int n) {
        const auto s = synthetic::octopus_saddle(n);
        return py::make_tuple(cloud_to_array(s.cloud), s.order, s.max_angles);
    });
    synth.def("cube", [](int n, double edge_len) {
        return cloud_to_array(synthetic::cube(n, edge_len).cloud);
    });
    synth.def("ridge_to_tjunction", [](double t, int n) {
        return cloud_to_array(synthetic::ridge_to_tjunction(t, n));
    });
    synth.def("add_noise",
              [](const Eigen::MatrixXd& positions, double sigma_pct,
                 uint64_t seed) {
                  return cloud_to_array(synthetic::add_noise(
                      cloud_from_array(positions), sigma_pct, seed));
              });
}
