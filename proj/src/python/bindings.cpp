#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "photon/cli.hpp"
#include "photon/fields.hpp"
#include "photon/operators.hpp"
#include "photon/spinhall.hpp"
#include "photon/verify.hpp"

namespace py = pybind11;
using namespace photon;

namespace {

nlohmann::json report_json(const OperatorReport& r) { return to_json(r); }

py::dict json_to_dict(const nlohmann::json& j) {
  py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "momentum-space photon wavefunction toolkit";

  py::class_<KGrid, std::shared_ptr<KGrid>>(m, "KGrid")
      .def_readonly("center", &KGrid::center)
      .def_readonly("half_width", &KGrid::half_width)
      .def_readonly("n", &KGrid::n)
      .def_readonly("masked_fraction", &KGrid::masked_fraction)
      .def("size", &KGrid::size)
      .def("point",
           [](const KGrid& g, std::size_t q) { return g.point(q); });

  m.def(
      "build_grid",
      [](const Vec3& center, const Vec3& half_width, std::array<int, 3> n,
         const Vec3& gauge_I, double eps_cone, double eps_k) {
        // shared_ptr<const KGrid> needs a non-const handle for pybind11
        return std::const_pointer_cast<KGrid>(
            build_grid(center, half_width, n, gauge_I, eps_cone, eps_k));
      },
      py::arg("center"), py::arg("half_width"), py::arg("n"),
      py::arg("gauge_I"), py::arg("eps_cone") = 1e-2, py::arg("eps_k") = -1.0);

  py::class_<BerryGauge>(m, "BerryGauge")
      .def(py::init<const Vec3&>())
      .def_readonly("I", &BerryGauge::I);

  py::class_<GaugeFrame, std::shared_ptr<GaugeFrame>>(m, "GaugeFrame")
      .def(py::init([](std::shared_ptr<KGrid> g, const BerryGauge& gauge) {
        return std::make_shared<GaugeFrame>(
            std::shared_ptr<const KGrid>(g), gauge);
      }))
      .def_readonly("gauge", &GaugeFrame::gauge);

  m.def("triad_at", [](const Vec3& k, const BerryGauge& g) {
    const Triad t = triad_at(k, g);
    return py::make_tuple(t.u, t.v, t.w);
  });
  m.def("berry_potential",
        [](const Vec3& k, const BerryGauge& g) { return berry_potential(k, g); });
  m.def("berry_field_analytic",
        [](const Vec3& k) { return berry_field_analytic(k); });
  m.def("gauge_angle", [](const Vec3& k, const BerryGauge& a,
                          const BerryGauge& b) { return gauge_angle(k, a, b); });
  m.def("monopole_flux", &monopole_flux, py::arg("k_radius"),
        py::arg("n_theta") = 64, py::arg("n_phi") = 128);

  py::class_<TwoComponentWavefunction>(m, "TwoComponentWavefunction")
      .def_readonly("time", &TwoComponentWavefunction::time)
      .def("norm",
           [](const TwoComponentWavefunction& ft) { return norm(ft); });

  m.def(
      "gaussian_packet",
      [](const GaugeFrame& frame, const Vec3& k0, const Vec3& width,
         int sigma) {
        GaussianPacketSpec spec;
        spec.k0 = k0;
        spec.width = width;
        spec.sigma = sigma;
        return make_gaussian_packet(spec, frame);
      },
      py::arg("frame"), py::arg("k0"), py::arg("width"), py::arg("sigma") = 1);

  m.def("expectation_spin",
        [](std::shared_ptr<GaugeFrame> fr, const TwoComponentWavefunction& ft) {
          return expectation(op_spin(fr), ft);
        });
  m.def("expectation_momentum",
        [](std::shared_ptr<GaugeFrame> fr, const TwoComponentWavefunction& ft) {
          return expectation(op_momentum(fr->grid), ft);
        });
  m.def("expectation_position",
        [](std::shared_ptr<GaugeFrame> fr, const TwoComponentWavefunction& ft) {
          return expectation(op_position(fr), ft);
        });
  m.def("expectation_b",
        [](std::shared_ptr<GaugeFrame> fr, const TwoComponentWavefunction& ft) {
          return expectation(op_b_analytic(fr), ft);
        });

  m.def(
      "verify_commutators",
      [](std::shared_ptr<KGrid> g, std::shared_ptr<GaugeFrame> fr, int trials,
         std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return json_to_dict(report_json(verify_commutator_table(
            std::shared_ptr<const KGrid>(g), fr, trials, rng)));
      },
      py::arg("grid"), py::arg("frame"), py::arg("trials") = 3,
      py::arg("seed") = 12345);

  py::class_<ShiftResult>(m, "ShiftResult")
      .def_readonly("theta", &ShiftResult::theta)
      .def_readonly("sigma", &ShiftResult::sigma)
      .def_readonly("k0", &ShiftResult::k0)
      .def_readonly("measured", &ShiftResult::measured)
      .def_readonly("predicted", &ShiftResult::predicted)
      .def_readonly("predicted_magnitude", &ShiftResult::predicted_magnitude)
      .def_readonly("relative_error", &ShiftResult::relative_error)
      .def_readonly("feasible", &ShiftResult::feasible);

  m.def("scan_theta", &scan_theta, py::arg("sigma"), py::arg("k0"),
        py::arg("thetas"), py::arg("divergence") = 0.01, py::arg("n") = 33);
  m.def(
      "run_scenario",
      [](double theta, int sigma, double k0, double divergence, int n) {
        SpinHallScenario s;
        s.theta = theta;
        s.sigma = sigma;
        s.k0 = k0;
        s.divergence = divergence;
        s.n = n;
        return run_scenario(s);
      },
      py::arg("theta"), py::arg("sigma") = 1, py::arg("k0") = 10.0,
      py::arg("divergence") = 0.01, py::arg("n") = 33);

  m.def("default_stencil_order", &default_stencil_order);
  m.def("set_default_stencil_order", &set_default_stencil_order);
}
